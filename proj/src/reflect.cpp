// The introspection subset: ClassInfo and its hierarchy, the MethodInfo
// family, AnyObjectInfo, instance-variable and parameter mirrors, invoke,
// and the Runtime object. Mirrors are plain objects of native-backed
// classes; each carries the described entity in the m_* payload fields.

#include <algorithm>
#include <climits>

#include "internal.hpp"

namespace green {

// Composite keys into Interp::class_info_cache_: classes use their index,
// array types use -2-type, Type$ pseudo-classes use INT_MIN/2 + class.
struct NativeImpls {
    static Value array_info(Interp& I, TypeId atype);
    static Value typeof_info(Interp& I, int cls);
};

namespace {

void gate_classes(Interp& I) {
    if (!I.opts.reflect_classes) I.throw_simple("NoReflectiveInfoException");
}

// What instance type a ClassInfo mirror describes (kNoType for standalone
// objects' classes).
TypeId info_type(Interp& I, const Obj* o) {
    if (o->type_override != kNoType) return o->type_override;
    if (o->m_method == 1) return I.prog.classes[o->m_class].obj_type;
    return I.prog.classes[o->m_class].type;
}

bool info_is_array(const Obj* o) { return o->type_override != kNoType; }
bool info_is_typeof(const Obj* o) { return o->m_method == 1; }

std::string info_name(Interp& I, const Obj* o) {
    if (info_is_array(o)) return I.prog.tt.at(o->type_override).name;
    if (info_is_typeof(o)) return I.prog.tt.at(I.prog.classes[o->m_class].obj_type).name;
    return I.prog.classes[o->m_class].name;
}

// ClassInfo for any type id.
Value type_info_of(Interp& I, TypeId t) {
    if (t == kNoType) return Value::nil();
    Program& p = I.prog;
    const TypeDescriptor& d = p.tt.at(t);
    switch (d.kind) {
    case TypeKind::Array:
        return NativeImpls::array_info(I, t);
    case TypeKind::ClassObject:
        for (const ClassModel& c : p.classes)
            if (c.obj_type == t) return NativeImpls::typeof_info(I, c.idx);
        return Value::nil();
    case TypeKind::Basic:
    case TypeKind::NilT:
    case TypeKind::Class:
    case TypeKind::Synth: {
        if (d.name.rfind("DS.Iter(", 0) == 0) return I.class_info(p.c_iter);
        if (d.name.rfind("DS.Stack(", 0) == 0) return I.class_info(p.c_stack);
        for (const ClassModel& c : p.classes)
            if (c.type == t) return I.class_info(c.idx);
        return Value::nil();
    }
    }
    return Value::nil();
}

// Instance type described by a class object (arrays carry the precise type).
TypeId class_object_instance_type(Interp& I, const Value& co) {
    if (!co.is_ref() || !co.ref->is_class_object) return kNoType;
    if (co.ref->type_override != kNoType) return co.ref->type_override;
    return I.prog.classes[co.ref->cls].type;
}

// vtab lookup + private scan (invoke may reach private methods).
int lookup_sig(Interp& I, int cls, const std::string& sig_key) {
    const ClassModel& c = I.prog.classes[cls];
    auto it = c.vtab.find(sig_key);
    if (it != c.vtab.end()) return it->second;
    for (int k = cls; k != -1; k = I.prog.classes[k].super)
        for (int mid : I.prog.classes[k].methods)
            if (I.prog.methods[mid].vis == Visibility::Private &&
                I.prog.methods[mid].sig_key == sig_key)
                return mid;
    return -1;
}

[[noreturn]] void throw_wp(Interp& I) { I.throw_simple("WrongParametersException"); }

// Coerces one invoke/new/ivar-set argument to a declared type; false when
// the value cannot inhabit it.
bool coerce_arg_ok(Interp& I, const Value& v, TypeId t, Value& out) {
    Program& p = I.prog;
    if (p.is_basic_type(t)) {
        Value b = v.is_ref() ? I.unbox(v) : v;
        bool ok = (t == p.t_bool && b.tag == Tag::Bool) ||
                  (t == p.t_char && b.tag == Tag::Char) ||
                  (t == p.t_byte && b.tag == Tag::Byte) ||
                  (t == p.t_int && b.tag == Tag::Int) ||
                  (t == p.t_long && b.tag == Tag::Long) ||
                  (t == p.t_real && b.tag == Tag::Real) ||
                  (t == p.t_double && b.tag == Tag::Double);
        out = b;
        return ok;
    }
    if (v.is_nil()) {
        out = v;
        return true;
    }
    out = v.is_basic() ? I.box(v) : v;
    return I.is_subtype(I.runtime_type(out), t);
}

// `wp` selects the failure exception (WrongParameters for invoke,
// TypeError for instance-variable set).
Value coerce_arg(Interp& I, const Value& v, TypeId t, bool wp) {
    Value out;
    if (!coerce_arg_ok(I, v, t, out)) {
        if (wp) throw_wp(I);
        I.throw_simple("TypeErrorException");
    }
    return out;
}

bool try_convert_args(Interp& I, const MethodModel& m, const std::vector<Value>& raw,
                      std::vector<Value>& out) {
    size_t fixed = m.params.size() - (m.variadic ? 1 : 0);
    if (!m.variadic && raw.size() != m.params.size()) return false;
    if (m.variadic && raw.size() < fixed) return false;
    out.clear();
    for (size_t i = 0; i < fixed; i++) {
        Value v;
        if (!coerce_arg_ok(I, raw[i], m.params[i], v)) return false;
        out.push_back(v);
    }
    if (m.variadic) {
        TypeId vt = m.params.back();
        TypeId elem = I.prog.tt.at(vt).elem;
        Value pack = I.make_array(vt, {(int64_t)(raw.size() - fixed)});
        for (size_t i = fixed; i < raw.size(); i++) {
            Value v;
            if (!coerce_arg_ok(I, raw[i], elem, v)) return false;
            pack.ref->arr->elems[i - fixed] = v;
        }
        out.push_back(pack);
    }
    return true;
}

std::vector<Value> convert_invoke_args(Interp& I, const MethodModel& m,
                                       const std::vector<Value>& raw) {
    std::vector<Value> out;
    if (!try_convert_args(I, m, raw, out)) throw_wp(I);
    return out;
}

// Runs `body` under a fresh packing frame; exceptions escaping it are
// rewrapped in PackedException.
template <class F>
Value run_packed(Interp& I, F body) {
    Value catcher = I.new_object(I.prog.find_class("CatchAll"), {});
    size_t keep = I.catch_stack.size();
    uint64_t id = I.push_catch(catcher, -1);
    try {
        Value out = body();
        I.pop_catch_to(keep);
        return out;
    } catch (UnwindToken& u) {
        if (u.target != id) throw;
        Value exc = I.pending.exc;
        I.pop_catch_to(keep);
        int pe = I.prog.find_class("PackedException");
        I.throw_value(I.new_object(pe, {exc}));
    }
}

Value invoke_virtual(Interp& I, int mid, const Value& recv, const Value& args_array) {
    gate_classes(I);
    const MethodModel& mm = I.prog.methods[mid];
    std::vector<Value> raw;
    if (args_array.is_ref() && args_array.ref->arr) raw = args_array.ref->arr->elems;
    else if (!args_array.is_nil()) throw_wp(I);

    int rc = I.runtime_class(recv);
    if (rc < 0) I.throw_simple("TypeErrorException");
    int target = lookup_sig(I, rc, mm.sig_key);
    if (target < 0 || I.prog.methods[target].is_init)
        I.throw_simple("TypeErrorException");
    const MethodModel& tm = I.prog.methods[target];
    std::vector<Value> conv = convert_invoke_args(I, tm, raw);

    Value out = run_packed(I, [&] {
        return I.send_key(recv, tm.name, tm.sig_key, std::move(conv));
    });
    if (tm.ret == kNoType) return Value::nil();
    return out.is_basic() ? I.box(out) : out;
}

Value invoke_bound(Interp& I, int mid, const Value& recv, const Value& args_array) {
    gate_classes(I);
    const MethodModel& mm = I.prog.methods[mid];
    std::vector<Value> raw;
    if (args_array.is_ref() && args_array.ref->arr) raw = args_array.ref->arr->elems;
    else if (!args_array.is_nil()) throw_wp(I);
    std::vector<Value> conv = convert_invoke_args(I, mm, raw);

    Value out = run_packed(I, [&] { return I.call(mid, recv, std::move(conv)); });
    Value boxed = mm.ret == kNoType ? Value::nil() : (out.is_basic() ? I.box(out) : out);
    I.intercept_result = boxed;   // interceptAll adopts the last invoke result
    I.intercept_invoked = true;
    return boxed;
}

// ---------------------------------------------------------------------------
// ClassInfo natives

Value nat_ci_getname(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    gate_classes(I);
    return I.make_string(info_name(I, self.ref.get()));
}

Value nat_ci_issupertypeof(Interp& I, const MethodModel&, const Value& self,
                           std::vector<Value>& a) {
    gate_classes(I);
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    TypeId sub = info_type(I, a[0].ref.get());
    TypeId sup = info_type(I, self.ref.get());
    if (sub == kNoType || sup == kNoType) return Value::of_bool(false);
    return Value::of_bool(I.is_subtype(sub, sup));
}

int info_chain_start(Interp& I, const Obj* o) {
    if (info_is_typeof(o)) return -1;
    if (info_is_array(o)) {
        TypeId elem = I.prog.tt.at(o->type_override).elem;
        return reference_kind(I.prog.tt.at(elem).kind) ? I.prog.c_any_class_array
                                                       : I.prog.c_any_array;
    }
    return o->m_class;
}

Value nat_ci_issuperclassof(Interp& I, const MethodModel&, const Value& self,
                            std::vector<Value>& a) {
    gate_classes(I);
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const Obj* sub = a[0].ref.get();
    const Obj* sup = self.ref.get();
    if (info_is_array(sup) || info_is_typeof(sup) || info_is_typeof(sub))
        return Value::of_bool(false);
    int start = info_chain_start(I, sub);
    if (start < 0) return Value::of_bool(false);
    return Value::of_bool(I.prog.class_subclass_of(start, sup->m_class));
}

Value nat_ci_getsuperclass(Interp& I, const MethodModel&, const Value& self,
                           std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    if (info_is_typeof(o)) return Value::nil();
    if (info_is_array(o)) return I.class_info(info_chain_start(I, o));
    int super = I.prog.classes[o->m_class].super;
    return super < 0 ? Value::nil() : I.class_info(super);
}

Value nat_ci_getivars(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    std::vector<Value> items;
    if (!info_is_array(o) && !info_is_typeof(o)) {
        bool own_only = m.native_a == 1; // getThisClassInstanceVariables
        for (int c = o->m_class; c != -1; c = I.prog.classes[c].super) {
            for (size_t i = 0; i < I.prog.classes[c].fields.size(); i++)
                items.push_back(I.instance_variable_info(c, (int)i));
            if (own_only) break;
        }
    }
    return I.make_iter(I.prog.classes[I.prog.c_class_ivar_info].type, std::move(items));
}

// native_a bits: 1 = own declarations only, 2 = public only
Value nat_ci_getmethods(Interp& I, const MethodModel& m, const Value& self,
                        std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    bool own_only = m.native_a & 1;
    bool public_only = m.native_a & 2;
    std::vector<Value> items;
    int cls = info_is_typeof(o) ? -1 : info_is_array(o) ? info_chain_start(I, o) : o->m_class;
    if (info_is_typeof(o)) {
        for (auto& [key, mid] : I.prog.classes[o->m_class].obj_vtab) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.is_init) continue;
            if (public_only && mm.vis != Visibility::Public) continue;
            items.push_back(I.method_info(mid));
        }
    } else if (cls >= 0) {
        for (auto& [key, mid] : I.prog.classes[cls].vtab) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.is_init) continue;
            if (public_only && mm.vis != Visibility::Public) continue;
            if (own_only && mm.owner != cls) continue;
            items.push_back(I.method_info(mid));
        }
    }
    return I.make_iter(I.prog.classes[I.prog.c_class_method_info].type, std::move(items));
}

Value nat_ci_getinitmethods(Interp& I, const MethodModel&, const Value& self,
                            std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    std::vector<Value> items;
    if (!info_is_array(o) && !info_is_typeof(o))
        for (int mid : I.prog.classes[o->m_class].methods)
            if (I.prog.methods[mid].is_init) items.push_back(I.method_info(mid));
    return I.make_iter(I.prog.classes[I.prog.c_class_init_method_info].type, std::move(items));
}

Value nat_ci_getivar_named(Interp& I, const MethodModel&, const Value& self,
                           std::vector<Value>& a) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& name = I.str_of(a[0]);
    if (!info_is_array(o) && !info_is_typeof(o))
        for (int c = o->m_class; c != -1; c = I.prog.classes[c].super)
            for (size_t i = 0; i < I.prog.classes[c].fields.size(); i++)
                if (I.prog.classes[c].fields[i].name == name)
                    return I.instance_variable_info(c, (int)i);
    return Value::nil();
}

bool method_params_equal(Interp& I, const MethodModel& m, const std::vector<TypeId>& want) {
    if (m.params.size() != want.size()) return false;
    for (size_t i = 0; i < want.size(); i++) {
        if (want[i] == kNoType) return false;
        if (!I.prog.tt.type_equal(m.params[i], want[i])) return false;
    }
    return true;
}

// getMethod(name, paramTypes : array(ClassInfo)[]) -> iterator of matches
Value nat_ci_getmethod(Interp& I, const MethodModel&, const Value& self,
                       std::vector<Value>& a) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& name = I.str_of(a[0]);
    std::vector<TypeId> want;
    if (!a[1].is_nil())
        for (const Value& ci : a[1].ref->arr->elems)
            want.push_back(ci.is_nil() ? kNoType : info_type(I, ci.ref.get()));
    std::vector<Value> items;
    int cls = info_is_array(o) ? info_chain_start(I, o) : info_is_typeof(o) ? -1 : o->m_class;
    if (cls >= 0)
        for (auto& [key, mid] : I.prog.classes[cls].vtab) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.name == name && !mm.is_init && method_params_equal(I, mm, want))
                items.push_back(I.method_info(mid));
        }
    return I.make_iter(I.prog.classes[I.prog.c_class_method_info].type, std::move(items));
}

// getMethod_v(name, ...classes) -> first match or nil
Value nat_ci_getmethod_v(Interp& I, const MethodModel&, const Value& self,
                         std::vector<Value>& a) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& name = I.str_of(a[0]);
    std::vector<TypeId> want;
    for (const Value& co : a[1].ref->arr->elems)
        want.push_back(class_object_instance_type(I, co));
    int cls = info_is_array(o) ? info_chain_start(I, o) : info_is_typeof(o) ? -1 : o->m_class;
    if (cls >= 0)
        for (auto& [key, mid] : I.prog.classes[cls].vtab) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.name == name && !mm.is_init && method_params_equal(I, mm, want))
                return I.method_info(mid);
        }
    return Value::nil();
}

Value nat_ci_getpublicmethod(Interp& I, const MethodModel&, const Value& self,
                             std::vector<Value>& a) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& name = I.str_of(a[0]);
    int cls = info_is_array(o) ? info_chain_start(I, o) : info_is_typeof(o) ? -1 : o->m_class;
    if (cls >= 0)
        for (auto& [key, mid] : I.prog.classes[cls].vtab) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.name == name && !mm.is_init && mm.vis == Visibility::Public)
                return I.method_info(mid);
        }
    return Value::nil();
}

Value nat_ci_getassociateclassobject(Interp& I, const MethodModel&, const Value& self,
                                     std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    if (info_is_array(o)) return I.array_class_object(o->type_override);
    return I.class_object(o->m_class);
}

Value nat_ci_isclassof(Interp& I, const MethodModel&, const Value& self,
                       std::vector<Value>& a) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    const Value& any = a[0];
    if (any.is_nil()) return Value::of_bool(false);
    if (info_is_array(o))
        return Value::of_bool(any.is_ref() && any.ref->arr &&
                              I.prog.tt.type_equal(I.runtime_type(any), o->type_override));
    if (info_is_typeof(o))
        return Value::of_bool(any.is_ref() && any.ref->is_class_object &&
                              any.ref->cls == o->m_class);
    if (any.is_ref() && (any.ref->is_class_object || any.ref->arr))
        return Value::of_bool(false);
    return Value::of_bool(I.runtime_class(any) == o->m_class);
}

Value nat_ci_isabstract(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    if (info_is_array(o)) return Value::of_bool(false);
    if (info_is_typeof(o)) return Value::of_bool(true);
    return Value::of_bool(I.prog.classes[o->m_class].is_abstract);
}

Value nat_aci_getelemclass(Interp& I, const MethodModel&, const Value& self,
                           std::vector<Value>&) {
    gate_classes(I);
    return type_info_of(I, I.prog.tt.at(self.ref->type_override).elem);
}

Value nat_aci_getdims(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    gate_classes(I);
    int d = 0;
    TypeId t = self.ref->type_override;
    while (t != kNoType && I.prog.tt.at(t).kind == TypeKind::Array) {
        d++;
        t = I.prog.tt.at(t).elem;
    }
    return Value::of_int(d);
}

// ---------------------------------------------------------------------------
// MethodInfo natives (ungated identity queries)

std::string method_signature_text(Interp& I, const MethodModel& m) {
    std::string s = m.name;
    if (m.params.empty()) {
        s += "()";
    } else {
        s += "( ";
        for (size_t i = 0; i < m.params.size(); i++) {
            if (i) s += "; ";
            if (m.variadic && i + 1 == m.params.size()) s += "... ";
            s += m.param_names.size() > i ? m.param_names[i] : "p" + std::to_string(i);
            s += " : " + I.prog.tt.at(m.params[i]).name;
        }
        s += " )";
    }
    if (m.ret != kNoType) s += " : " + I.prog.tt.at(m.ret).name;
    return s;
}

Value nat_mi_getname(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(I.prog.methods[self.ref->m_method].name);
}

Value nat_mi_tostring(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(method_signature_text(I, I.prog.methods[self.ref->m_method]));
}

Value nat_mi_getbodyinfo(Interp& I, const MethodModel&, const Value&, std::vector<Value>&) {
    I.throw_simple("NoReflectiveBodyInfoException");
}

Value nat_mi_getvisibility(Interp& I, const MethodModel&, const Value& self,
                           std::vector<Value>&) {
    return Value::of_int((int)I.prog.methods[self.ref->m_method].vis);
}

Value nat_mi_getparametertypes(Interp& I, const MethodModel&, const Value& self,
                               std::vector<Value>&) {
    const MethodModel& mm = I.prog.methods[self.ref->m_method];
    std::vector<Value> items;
    for (TypeId t : mm.params) items.push_back(type_info_of(I, t));
    return I.make_iter(I.prog.classes[I.prog.c_class_info].type, std::move(items));
}

Value nat_mi_getreturntype(Interp& I, const MethodModel&, const Value& self,
                           std::vector<Value>&) {
    return type_info_of(I, I.prog.methods[self.ref->m_method].ret);
}

Value nat_mi_getparameters(Interp& I, const MethodModel&, const Value& self,
                           std::vector<Value>&) {
    const MethodModel& mm = I.prog.methods[self.ref->m_method];
    std::vector<Value> items;
    for (size_t i = 0; i < mm.params.size(); i++) {
        ObjPtr o = I.alloc_raw(I.prog.c_parameter_info);
        o->m_method = mm.id;
        o->m_member = (int)i;
        items.push_back(Value::of_ref(o));
    }
    return I.make_iter(I.prog.classes[I.prog.c_parameter_info].type, std::move(items));
}

Value nat_mi_getexceptionclass(Interp& I, const MethodModel&, const Value& self,
                               std::vector<Value>&) {
    return type_info_of(I, I.prog.methods[self.ref->m_method].exc);
}

Value nat_cmi_isabstract(Interp& I, const MethodModel&, const Value& self,
                         std::vector<Value>&) {
    return Value::of_bool(I.prog.methods[self.ref->m_method].is_abstract);
}

Value nat_cmi_invoke(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return invoke_virtual(I, self.ref->m_method, a[0], a[1]);
}

Value nat_omi_invoke(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return invoke_bound(I, self.ref->m_method, self.ref->m_obj, a[0]);
}

// ---------------------------------------------------------------------------
// ParameterInfo / ConstantInfo / EnumInfo / live-variable mirrors

Value nat_pi_getname(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    const MethodModel& mm = I.prog.methods[self.ref->m_method];
    return I.make_string(mm.param_names[self.ref->m_member]);
}

Value nat_pi_gettype(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    const MethodModel& mm = I.prog.methods[self.ref->m_method];
    return type_info_of(I, mm.params[self.ref->m_member]);
}

Value nat_const_getname(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(I.prog.classes[self.ref->m_class].consts[self.ref->m_member].name);
}

Value nat_const_getvalue(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    const Value& v = I.prog.classes[self.ref->m_class].consts[self.ref->m_member].value;
    return v.is_basic() ? I.box(v) : v;
}

Value nat_enum_getname(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(I.prog.classes[self.ref->m_class].enums[self.ref->m_member].name);
}

Value nat_enum_getvalue(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return Value::of_int(I.prog.classes[self.ref->m_class].enums[self.ref->m_member].value);
}

Value nat_live_getname(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(self.ref->str);
}

Value nat_live_getvalue(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return self.ref->m_obj;
}

// ---------------------------------------------------------------------------
// instance-variable mirrors

const FieldModel& ivar_field(Interp& I, const Obj* o) {
    const ClassModel& c = I.prog.classes[o->m_class];
    return o->m_method == 2 ? c.obj_fields[o->m_member] : c.fields[o->m_member];
}

Value nat_iv_getname(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(ivar_field(I, self.ref.get()).name);
}

Value nat_iv_gettype(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return type_info_of(I, ivar_field(I, self.ref.get()).type);
}

Value nat_iv_isexpanded(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return Value::of_bool(ivar_field(I, self.ref.get()).expanded);
}

Obj* checked_field_owner(Interp& I, const Obj* info, const Value& obj) {
    if (!obj.is_ref() || obj.ref->is_class_object)
        I.throw_simple("TypeErrorException");
    for (int c = obj.ref->cls; c != -1; c = I.prog.classes[c].super)
        if (c == info->m_class) return obj.ref.get();
    I.throw_simple("TypeErrorException");
}

Value ivar_get(Interp& I, Obj* owner, const Obj* info) {
    const FieldModel& f = ivar_field(I, info);
    Value v = owner->fields[f.slot];
    return v.is_basic() ? I.box(v) : v;
}

void ivar_set(Interp& I, Obj* owner, const Obj* info, const Value& v) {
    const FieldModel& f = ivar_field(I, info);
    owner->fields[f.slot] = coerce_arg(I, v, f.type, false);
}

Value nat_civ_get(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return ivar_get(I, checked_field_owner(I, self.ref.get(), a[0]), self.ref.get());
}

Value nat_civ_set(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    ivar_set(I, checked_field_owner(I, self.ref.get(), a[0]), self.ref.get(), a[1]);
    return Value::nil();
}

Value nat_oiv_get(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return ivar_get(I, self.ref->m_obj.ref.get(), self.ref.get());
}

Value nat_oiv_set(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    ivar_set(I, self.ref->m_obj.ref.get(), self.ref.get(), a[0]);
    return Value::nil();
}

// ---------------------------------------------------------------------------
// AnyObjectInfo natives

Value nat_aoi_getobject(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return self.ref->m_obj;
}

Value nat_aoi_gettypeinfo(Interp& I, const MethodModel&, const Value& self,
                          std::vector<Value>&) {
    return type_info_of(I, I.runtime_type(self.ref->m_obj));
}

Value object_ivar_info(Interp& I, const Value& obj, int cls, int member, bool obj_side) {
    ObjPtr o = I.alloc_raw(I.prog.c_object_ivar_info);
    o->m_obj = obj;
    o->m_class = cls;
    o->m_member = member;
    o->m_method = obj_side ? 2 : 0;
    return Value::of_ref(o);
}

Value nat_aoi_getivars(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    const Obj* o = self.ref.get();
    const Value& subject = o->m_obj;
    std::vector<Value> items;
    if (subject.is_ref() && subject.ref->is_class_object) {
        int c = subject.ref->cls;
        for (size_t i = 0; i < I.prog.classes[c].obj_fields.size(); i++)
            items.push_back(object_ivar_info(I, subject, c, (int)i, true));
    } else if (subject.is_ref() && !subject.ref->arr) {
        for (int c = I.runtime_class(subject); c != -1; c = I.prog.classes[c].super)
            for (size_t i = 0; i < I.prog.classes[c].fields.size(); i++)
                items.push_back(object_ivar_info(I, subject, c, (int)i, false));
    }
    return I.make_iter(I.prog.classes[I.prog.c_object_ivar_info].type, std::move(items));
}

Value nat_aoi_getivar_named(Interp& I, const MethodModel&, const Value& self,
                            std::vector<Value>& a) {
    const Obj* o = self.ref.get();
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& name = I.str_of(a[0]);
    const Value& subject = o->m_obj;
    if (subject.is_ref() && subject.ref->is_class_object) {
        int c = subject.ref->cls;
        for (size_t i = 0; i < I.prog.classes[c].obj_fields.size(); i++)
            if (I.prog.classes[c].obj_fields[i].name == name)
                return object_ivar_info(I, subject, c, (int)i, true);
    } else if (subject.is_ref() && !subject.ref->arr) {
        for (int c = I.runtime_class(subject); c != -1; c = I.prog.classes[c].super)
            for (size_t i = 0; i < I.prog.classes[c].fields.size(); i++)
                if (I.prog.classes[c].fields[i].name == name)
                    return object_ivar_info(I, subject, c, (int)i, false);
    }
    return Value::nil();
}

// native_a bit 2 = public only
Value nat_aoi_getmethods(Interp& I, const MethodModel& m, const Value& self,
                         std::vector<Value>&) {
    const Obj* o = self.ref.get();
    bool public_only = m.native_a & 2;
    const Value& subject = o->m_obj;
    std::vector<Value> items;
    int cls = I.runtime_class(subject);
    if (cls >= 0) {
        bool obj_side = subject.is_ref() && subject.ref->is_class_object;
        const auto& vt = obj_side ? I.prog.classes[cls].obj_vtab : I.prog.classes[cls].vtab;
        for (auto& [key, mid] : vt) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.is_init) continue;
            if (public_only && mm.vis != Visibility::Public) continue;
            items.push_back(I.object_method_info(mid, subject));
        }
    }
    return I.make_iter(I.prog.classes[I.prog.c_object_method_info].type, std::move(items));
}

// getMethod(name) / getPublicMethod(name): first match. native_a bit 2 = public.
Value nat_aoi_getmethod_named(Interp& I, const MethodModel& m, const Value& self,
                              std::vector<Value>& a) {
    const Obj* o = self.ref.get();
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& name = I.str_of(a[0]);
    bool public_only = m.native_a & 2;
    const Value& subject = o->m_obj;
    int cls = I.runtime_class(subject);
    if (cls >= 0) {
        bool obj_side = subject.is_ref() && subject.ref->is_class_object;
        const auto& vt = obj_side ? I.prog.classes[cls].obj_vtab : I.prog.classes[cls].vtab;
        for (auto& [key, mid] : vt) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.is_init || mm.name != name) continue;
            if (public_only && mm.vis != Visibility::Public) continue;
            return I.object_method_info(mid, subject);
        }
    }
    return Value::nil();
}

Value nat_aoi_getmethod_typed(Interp& I, const MethodModel&, const Value& self,
                              std::vector<Value>& a) {
    const Obj* o = self.ref.get();
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& name = I.str_of(a[0]);
    std::vector<TypeId> want;
    if (!a[1].is_nil())
        for (const Value& ci : a[1].ref->arr->elems)
            want.push_back(ci.is_nil() ? kNoType : info_type(I, ci.ref.get()));
    const Value& subject = o->m_obj;
    int cls = I.runtime_class(subject);
    if (cls >= 0) {
        bool obj_side = subject.is_ref() && subject.ref->is_class_object;
        const auto& vt = obj_side ? I.prog.classes[cls].obj_vtab : I.prog.classes[cls].vtab;
        for (auto& [key, mid] : vt) {
            const MethodModel& mm = I.prog.methods[mid];
            if (mm.is_init || mm.name != name) continue;
            if (method_params_equal(I, mm, want)) return I.object_method_info(mid, subject);
        }
    }
    return Value::nil();
}

// ---------------------------------------------------------------------------
// ClassObjectInfo natives (gated)

Value nat_coi_getinitmethod(Interp& I, const MethodModel&, const Value& self,
                            std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    for (int mid : I.prog.classes[o->m_class].obj_methods)
        if (I.prog.methods[mid].is_init) return I.method_info(mid);
    return Value::nil();
}

// native_a bit 2 = public only; bit 4 = enums
Value nat_coi_getconstants(Interp& I, const MethodModel& m, const Value& self,
                           std::vector<Value>&) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    bool public_only = m.native_a & 2;
    bool enums = m.native_a & 4;
    const ClassModel& c = I.prog.classes[o->m_class];
    std::vector<Value> items;
    if (enums) {
        for (size_t i = 0; i < c.enums.size(); i++) {
            if (public_only && !c.enums[i].is_public) continue;
            ObjPtr e = I.alloc_raw(I.prog.c_enum_info);
            e->m_class = c.idx;
            e->m_member = (int)i;
            items.push_back(Value::of_ref(e));
        }
        return I.make_iter(I.prog.classes[I.prog.c_enum_info].type, std::move(items));
    }
    for (size_t i = 0; i < c.consts.size(); i++) {
        if (public_only && !c.consts[i].is_public) continue;
        ObjPtr e = I.alloc_raw(I.prog.c_constant_info);
        e->m_class = c.idx;
        e->m_member = (int)i;
        items.push_back(Value::of_ref(e));
    }
    return I.make_iter(I.prog.classes[I.prog.c_constant_info].type, std::move(items));
}

Value nat_coi_new(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    gate_classes(I);
    const Obj* o = self.ref.get();
    std::vector<Value> raw;
    if (a[0].is_ref() && a[0].ref->arr) raw = a[0].ref->arr->elems;
    else if (!a[0].is_nil()) throw_wp(I);

    for (int mid : I.prog.classes[o->m_class].obj_methods) {
        const MethodModel& mm = I.prog.methods[mid];
        if (mm.name != "new") continue;
        std::vector<Value> conv;
        if (!try_convert_args(I, mm, raw, conv)) continue; // next new overload
        return run_packed(I, [&] { return I.call(mid, o->m_obj, std::move(conv)); });
    }
    throw_wp(I);
}

// ---------------------------------------------------------------------------
// MethodCallInfo

Value nat_mci_getmethodinfo(Interp& I, const MethodModel&, const Value& self,
                            std::vector<Value>&) {
    return I.method_info(self.ref->m_method);
}

Value nat_mci_getlivelocals(Interp& I, const MethodModel&, const Value& self,
                            std::vector<Value>&) {
    std::vector<Value> items = self.ref->fields;
    return I.make_iter(I.prog.classes[I.prog.c_live_local_variable_info].type, std::move(items));
}

Value nat_mci_getliveparams(Interp& I, const MethodModel&, const Value& self,
                            std::vector<Value>&) {
    std::vector<Value> items = self.ref->items;
    return I.make_iter(I.prog.classes[I.prog.c_live_parameter_info].type, std::move(items));
}

Value live_info(Interp& I, int cls, const std::string& name, const Value& v) {
    ObjPtr o = I.alloc_raw(cls);
    o->str = name;
    o->m_obj = v.is_basic() ? I.box(v) : (v.tag == Tag::Poison ? Value::nil() : v);
    return Value::of_ref(o);
}

void collect_local_decls(const std::vector<StmtP>& body,
                         std::vector<std::pair<std::string, int>>& out) {
    for (const StmtP& s : body) {
        if (!s) continue;
        if (s->kind == StmtKind::VarDecl && s->slot >= 0) out.push_back({s->name, s->slot});
        collect_local_decls(s->body, out);
        collect_local_decls(s->else_body, out);
        for (const CaseArm& arm : s->arms) collect_local_decls(arm.body, out);
        collect_local_decls(s->otherwise, out);
    }
}

Value method_call_info(Interp& I, const CallFrame& f) {
    ObjPtr o = I.alloc_raw(I.prog.c_method_call_info);
    o->m_method = f.method;
    const MethodModel& mm = I.prog.methods[f.method];
    for (size_t i = 0; i < mm.param_names.size() && i < f.slots.size(); i++)
        o->items.push_back(
            live_info(I, I.prog.c_live_parameter_info, mm.param_names[i], f.slots[i]));
    if (mm.ast) {
        std::vector<std::pair<std::string, int>> locals;
        for (const VarDeclAST& v : mm.ast->locals)
            if (v.slot >= 0) locals.push_back({v.name, v.slot});
        collect_local_decls(mm.ast->body, locals);
        for (auto& [name, slot] : locals)
            if ((size_t)slot < f.slots.size())
                o->fields.push_back(
                    live_info(I, I.prog.c_live_local_variable_info, name, f.slots[slot]));
    }
    return Value::of_ref(o);
}

// ---------------------------------------------------------------------------
// Runtime natives

Value nat_rt_exit(Interp&, const MethodModel&, const Value&, std::vector<Value>& a) {
    throw ExitSignal{a[0].i};
}

Value nat_rt_putatendlist(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    I.end_list.push_back(a[0]);
    return Value::nil();
}

Value nat_rt_getclasses(Interp& I, const MethodModel&, const Value&, std::vector<Value>&) {
    std::vector<Value> items;
    for (const ClassModel& c : I.prog.classes) items.push_back(I.class_info(c.idx));
    return I.make_iter(I.prog.classes[I.prog.c_class_info].type, std::move(items));
}

Value nat_rt_searchforclass(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    int c = I.prog.find_class(I.str_of(a[0]));
    return c < 0 ? Value::nil() : I.class_info(c);
}

Value nat_rt_getmethodcallstack(Interp& I, const MethodModel& m, const Value&,
                                std::vector<Value>&) {
    if (!I.opts.reflect_calls) I.throw_simple("NoReflectiveCallInfoException");
    std::vector<Value> items;
    for (size_t i = 0; i < I.frames.size(); i++) {
        if (i + 1 == I.frames.size() && I.frames[i].method == m.id) break;
        items.push_back(method_call_info(I, I.frames[i]));
    }
    return I.make_stack(I.prog.classes[I.prog.c_method_call_info].type, std::move(items));
}

Value nat_rt_getcatchobjectstack(Interp& I, const MethodModel&, const Value&,
                                 std::vector<Value>&) {
    std::vector<Value> items;
    for (const CatchFrameRec& r : I.catch_stack) items.push_back(r.catch_obj);
    return I.make_stack(I.prog.classes[I.prog.c_catch].type, std::move(items));
}

Value nat_rt_setcatchunchecked(Interp& I, const MethodModel&, const Value&,
                               std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    if (!I.catch_stack.empty()) I.catch_stack.front().catch_obj = a[0];
    return Value::nil();
}

Value nat_rt_getcatchunchecked(Interp& I, const MethodModel&, const Value&,
                               std::vector<Value>&) {
    return I.catch_stack.empty() ? Value::nil() : I.catch_stack.front().catch_obj;
}

}  // namespace

// ---------------------------------------------------------------------------
// declarations

void reflect_declare(Program& p) {
    auto cls = [&](const char* name, const char* super, bool abs) {
        BuiltinClass b;
        b.name = name;
        b.super = super;
        b.is_abstract = abs;
        return declare_class(p, b);
    };
    p.c_class_info = cls("ClassInfo", "AnyClass", false);
    p.c_value_class_info = cls("ValueClassInfo", "ClassInfo", false);
    cls("RefClassInfo", "ClassInfo", false);
    p.c_abstract_class_info = cls("AbstractClassInfo", "RefClassInfo", false);
    cls("ConcreteClassInfo", "RefClassInfo", false);
    cls("NormalClassInfo", "ConcreteClassInfo", false);
    p.c_array_class_info = cls("ArrayClassInfo", "ConcreteClassInfo", false);

    p.c_method_info = cls("MethodInfo", "AnyClass", true);
    p.c_class_method_info = cls("ClassMethodInfo", "MethodInfo", false);
    p.c_class_init_method_info = cls("ClassInitMethodInfo", "MethodInfo", false);
    p.c_object_method_info = cls("ObjectMethodInfo", "MethodInfo", false);
    p.c_object_init_method_info = cls("ObjectInitMethodInfo", "MethodInfo", false);
    p.c_method_body_info = cls("MethodBodyInfo", "AnyClass", false);

    p.c_instance_variable_info = cls("InstanceVariableInfo", "AnyClass", true);
    p.c_class_ivar_info = cls("ClassInstanceVariableInfo", "InstanceVariableInfo", false);
    p.c_object_ivar_info = cls("ObjectInstanceVariableInfo", "InstanceVariableInfo", false);

    p.c_any_object_info = cls("AnyObjectInfo", "AnyClass", true);
    p.c_object_info = cls("ObjectInfo", "AnyObjectInfo", false);
    p.c_class_object_info = cls("ClassObjectInfo", "AnyObjectInfo", false);

    p.c_parameter_info = cls("ParameterInfo", "AnyClass", false);
    p.c_constant_info = cls("ConstantInfo", "AnyClass", false);
    p.c_enum_info = cls("EnumInfo", "AnyClass", false);
    p.c_method_call_info = cls("MethodCallInfo", "AnyClass", false);
    p.c_live_local_variable_info = cls("LiveLocalVariableInfo", "AnyClass", false);
    p.c_live_parameter_info = cls("LiveParameterInfo", "AnyClass", false);
}

// ---------------------------------------------------------------------------
// definitions

void reflect_define(Program& p) {
    const TypeId t_any = p.classes[p.c_any].type;
    const TypeId t_aco = p.classes[p.c_any_class_object].type;
    const TypeId t_str = p.classes[p.c_string].type;
    const TypeId t_ci = p.classes[p.c_class_info].type;
    const TypeId t_cmi = p.classes[p.c_class_method_info].type;
    const TypeId t_cii = p.classes[p.c_class_init_method_info].type;
    const TypeId t_omi = p.classes[p.c_object_method_info].type;
    const TypeId t_oimi = p.classes[p.c_object_init_method_info].type;
    const TypeId t_mbi = p.classes[p.c_method_body_info].type;
    const TypeId t_civ = p.classes[p.c_class_ivar_info].type;
    const TypeId t_oiv = p.classes[p.c_object_ivar_info].type;
    const TypeId t_pari = p.classes[p.c_parameter_info].type;
    const TypeId t_coni = p.classes[p.c_constant_info].type;
    const TypeId t_enumi = p.classes[p.c_enum_info].type;
    const TypeId t_mci = p.classes[p.c_method_call_info].type;
    const TypeId t_llvi = p.classes[p.c_live_local_variable_info].type;
    const TypeId t_lpi = p.classes[p.c_live_parameter_info].type;
    const TypeId t_catch = p.classes[p.c_catch].type;
    const TypeId t_catch_unchecked = p.classes[p.c_catch_unchecked].type;
    const TypeId t_function = p.classes[p.c_function].type;

    auto catch_type = [&](const char* name) {
        int c = p.find_class(name);
        return c == -1 ? kNoType : p.classes[c].type;
    };
    const TypeId dflt = catch_type("CatchUncheckedException");
    const TypeId exc_te = catch_type("CatchTypeErrorException");
    const TypeId exc_body = catch_type("CatchNoReflectiveBodyInfoException");
    const TypeId exc_invoke = catch_type("CatchInvokePackedException");
    const TypeId exc_new = catch_type("CatchNewException");
    const TypeId exc_calls = catch_type("CatchNoReflectiveCallInfoException");

    auto pub = Visibility::Public;
    auto n = [&](int cls, bool obj, const char* name, std::vector<TypeId> ps,
                 std::vector<std::string> ns, TypeId ret, TypeId exc, NativeFn fn,
                 int a = -1) {
        return add_native(p, cls, obj, pub, name, std::move(ps), std::move(ns), ret, exc,
                          false, fn, a, -1);
    };

    // --- ClassInfo
    n(p.c_class_info, false, "getName", {}, {}, t_str, dflt, nat_ci_getname);
    n(p.c_class_info, false, "toString", {}, {}, t_str, dflt, nat_ci_getname);
    n(p.c_class_info, false, "isSupertypeOf", {t_ci}, {"aSubtype"}, p.t_bool, dflt,
      nat_ci_issupertypeof);
    n(p.c_class_info, false, "isSuperclassOf", {t_ci}, {"aSubclass"}, p.t_bool, dflt,
      nat_ci_issuperclassof);
    n(p.c_class_info, false, "getSuperclass", {}, {}, t_ci, dflt, nat_ci_getsuperclass);
    n(p.c_class_info, false, "getInstanceVariables", {}, {}, p.iter_of(t_civ), dflt,
      nat_ci_getivars, 0);
    n(p.c_class_info, false, "getThisClassInstanceVariables", {}, {}, p.iter_of(t_civ), dflt,
      nat_ci_getivars, 1);
    n(p.c_class_info, false, "getMethods", {}, {}, p.iter_of(t_cmi), dflt, nat_ci_getmethods, 0);
    n(p.c_class_info, false, "getPublicMethods", {}, {}, p.iter_of(t_cmi), dflt,
      nat_ci_getmethods, 2);
    n(p.c_class_info, false, "getThisClassMethods", {}, {}, p.iter_of(t_cmi), dflt,
      nat_ci_getmethods, 1);
    n(p.c_class_info, false, "getThisClassPublicMethods", {}, {}, p.iter_of(t_cmi), dflt,
      nat_ci_getmethods, 3);
    n(p.c_class_info, false, "getInitMethods", {}, {}, p.iter_of(t_cii), dflt,
      nat_ci_getinitmethods);
    n(p.c_class_info, false, "getInstanceVariable", {t_str}, {"name"}, t_civ, dflt,
      nat_ci_getivar_named);
    n(p.c_class_info, false, "getMethod", {t_str, p.array_of(t_ci, 1)},
      {"name", "parameterTypes"}, p.iter_of(t_cmi), dflt, nat_ci_getmethod);
    add_native(p, p.c_class_info, false, pub, "getMethod_v", {t_str, p.array_of(t_aco, 1)},
               {"name", "parameterClasses"}, t_cmi, dflt, true, nat_ci_getmethod_v);
    n(p.c_class_info, false, "getPublicMethod", {t_str}, {"name"}, t_cmi, dflt,
      nat_ci_getpublicmethod);
    n(p.c_class_info, false, "getAssociateClassObject", {}, {}, t_aco, dflt,
      nat_ci_getassociateclassobject);
    n(p.c_class_info, false, "isClassOf", {t_any}, {"any"}, p.t_bool, dflt, nat_ci_isclassof);
    n(p.c_class_info, false, "isAbstract", {}, {}, p.t_bool, dflt, nat_ci_isabstract);

    // --- ArrayClassInfo extras
    n(p.c_array_class_info, false, "getArrayElementClass", {}, {}, t_ci, dflt,
      nat_aci_getelemclass);
    n(p.c_array_class_info, false, "getNumberOfDimensions", {}, {}, p.t_int, dflt,
      nat_aci_getdims);

    // --- MethodInfo
    n(p.c_method_info, false, "getName", {}, {}, t_str, dflt, nat_mi_getname);
    n(p.c_method_info, false, "toString", {}, {}, t_str, dflt, nat_mi_tostring);
    n(p.c_method_info, false, "getBodyInfo", {}, {}, t_mbi, exc_body, nat_mi_getbodyinfo);
    n(p.c_method_info, false, "getVisibility", {}, {}, p.t_int, dflt, nat_mi_getvisibility);
    n(p.c_method_info, false, "getParameterTypes", {}, {}, p.iter_of(t_ci), dflt,
      nat_mi_getparametertypes);
    n(p.c_method_info, false, "getReturnType", {}, {}, t_ci, dflt, nat_mi_getreturntype);
    n(p.c_method_info, false, "getParameters", {}, {}, p.iter_of(t_pari), dflt,
      nat_mi_getparameters);
    n(p.c_method_info, false, "getExceptionClass", {}, {}, t_ci, dflt,
      nat_mi_getexceptionclass);
    // visibility constants live on the class object
    const std::pair<const char*, int> vis_consts[] = {
        {"constructor_v", 0}, {"public_v", 1}, {"subclass_v", 2}, {"private_v", 3}};
    for (auto& [cname, v] : vis_consts) {
        ConstModel cm;
        cm.name = cname;
        cm.type = p.t_int;
        cm.value = Value::of_int(v);
        p.classes[p.c_method_info].consts.push_back(cm);
    }

    // --- ClassMethodInfo
    n(p.c_class_method_info, false, "isAbstract", {}, {}, p.t_bool, dflt, nat_cmi_isabstract);
    n(p.c_class_method_info, false, "invoke", {t_any, p.array_of(t_any, 1)},
      {"obj", "args"}, t_any, exc_invoke, nat_cmi_invoke);
    add_native(p, p.c_class_method_info, false, pub, "invoke_v",
               {t_any, p.array_of(t_any, 1)}, {"obj", "args"}, t_any, exc_invoke, true,
               nat_cmi_invoke);

    // --- ObjectMethodInfo
    n(p.c_object_method_info, false, "invoke", {p.array_of(t_any, 1)}, {"args"}, t_any,
      exc_invoke, nat_omi_invoke);
    add_native(p, p.c_object_method_info, false, pub, "invoke_v", {p.array_of(t_any, 1)},
               {"args"}, t_any, exc_invoke, true, nat_omi_invoke);

    // --- InstanceVariableInfo family
    n(p.c_instance_variable_info, false, "getName", {}, {}, t_str, dflt, nat_iv_getname);
    n(p.c_instance_variable_info, false, "getType", {}, {}, t_ci, dflt, nat_iv_gettype);
    n(p.c_instance_variable_info, false, "isExpanded", {}, {}, p.t_bool, dflt,
      nat_iv_isexpanded);
    n(p.c_class_ivar_info, false, "get", {t_any}, {"obj"}, t_any, exc_te, nat_civ_get);
    n(p.c_class_ivar_info, false, "set", {t_any, t_any}, {"obj", "value"}, kNoType, exc_te,
      nat_civ_set);
    n(p.c_object_ivar_info, false, "get", {}, {}, t_any, exc_te, nat_oiv_get);
    n(p.c_object_ivar_info, false, "set", {t_any}, {"value"}, kNoType, exc_te, nat_oiv_set);

    // --- AnyObjectInfo
    n(p.c_any_object_info, false, "getObject", {}, {}, t_any, dflt, nat_aoi_getobject);
    n(p.c_any_object_info, false, "getTypeInfo", {}, {}, t_ci, dflt, nat_aoi_gettypeinfo);
    n(p.c_any_object_info, false, "getInstanceVariables", {}, {}, p.iter_of(t_oiv), dflt,
      nat_aoi_getivars);
    n(p.c_any_object_info, false, "getInstanceVariable", {t_str}, {"name"}, t_oiv, dflt,
      nat_aoi_getivar_named);
    n(p.c_any_object_info, false, "getMethods", {}, {}, p.iter_of(t_omi), dflt,
      nat_aoi_getmethods, 0);
    n(p.c_any_object_info, false, "getPublicMethods", {}, {}, p.iter_of(t_omi), dflt,
      nat_aoi_getmethods, 2);
    n(p.c_any_object_info, false, "getMethod", {t_str}, {"name"}, t_omi, dflt,
      nat_aoi_getmethod_named, 0);
    n(p.c_any_object_info, false, "getPublicMethod", {t_str}, {"name"}, t_omi, dflt,
      nat_aoi_getmethod_named, 2);
    n(p.c_any_object_info, false, "getMethod", {t_str, p.array_of(t_ci, 1)},
      {"name", "parameterTypes"}, t_omi, dflt, nat_aoi_getmethod_typed);

    // --- ClassObjectInfo
    n(p.c_class_object_info, false, "getInitMethod", {}, {}, t_oimi, dflt,
      nat_coi_getinitmethod);
    n(p.c_class_object_info, false, "getConstants", {}, {}, p.iter_of(t_coni), dflt,
      nat_coi_getconstants, 0);
    n(p.c_class_object_info, false, "getPublicConstants", {}, {}, p.iter_of(t_coni), dflt,
      nat_coi_getconstants, 2);
    n(p.c_class_object_info, false, "getEnumConstants", {}, {}, p.iter_of(t_enumi), dflt,
      nat_coi_getconstants, 4);
    n(p.c_class_object_info, false, "getPublicEnumConstants", {}, {}, p.iter_of(t_enumi),
      dflt, nat_coi_getconstants, 6);
    n(p.c_class_object_info, false, "new", {p.array_of(t_any, 1)}, {"args"}, t_any, exc_new,
      nat_coi_new);
    add_native(p, p.c_class_object_info, false, pub, "new_v", {p.array_of(t_any, 1)},
               {"args"}, t_any, exc_new, true, nat_coi_new);

    // --- ParameterInfo / ConstantInfo / EnumInfo / live mirrors
    n(p.c_parameter_info, false, "getName", {}, {}, t_str, dflt, nat_pi_getname);
    n(p.c_parameter_info, false, "getType", {}, {}, t_ci, dflt, nat_pi_gettype);
    n(p.c_constant_info, false, "getName", {}, {}, t_str, dflt, nat_const_getname);
    n(p.c_constant_info, false, "getValue", {}, {}, t_any, dflt, nat_const_getvalue);
    n(p.c_enum_info, false, "getName", {}, {}, t_str, dflt, nat_enum_getname);
    n(p.c_enum_info, false, "getValue", {}, {}, p.t_int, dflt, nat_enum_getvalue);
    n(p.c_live_local_variable_info, false, "getName", {}, {}, t_str, dflt, nat_live_getname);
    n(p.c_live_local_variable_info, false, "getValue", {}, {}, t_any, dflt, nat_live_getvalue);
    n(p.c_live_parameter_info, false, "getName", {}, {}, t_str, dflt, nat_live_getname);
    n(p.c_live_parameter_info, false, "getValue", {}, {}, t_any, dflt, nat_live_getvalue);

    // --- MethodCallInfo
    n(p.c_method_call_info, false, "getMethodInfo", {}, {}, p.classes[p.c_method_info].type,
      dflt, nat_mci_getmethodinfo);
    n(p.c_method_call_info, false, "getLiveLocalVariables", {}, {}, p.iter_of(t_llvi), dflt,
      nat_mci_getlivelocals);
    n(p.c_method_call_info, false, "getLiveParameters", {}, {}, p.iter_of(t_lpi), dflt,
      nat_mci_getliveparams);

    // --- Runtime
    n(p.c_runtime, true, "exit", {p.t_int}, {"errorCode"}, kNoType, dflt, nat_rt_exit);
    n(p.c_runtime, true, "putAtEndList", {t_function}, {"aFunction"}, kNoType, dflt,
      nat_rt_putatendlist);
    n(p.c_runtime, true, "getClasses", {}, {}, p.iter_of(t_ci), dflt, nat_rt_getclasses);
    n(p.c_runtime, true, "searchForClass", {t_str}, {"name"}, t_ci, dflt,
      nat_rt_searchforclass);
    n(p.c_runtime, true, "getMethodCallStack", {}, {}, p.stack_of(t_mci), exc_calls,
      nat_rt_getmethodcallstack);
    n(p.c_runtime, true, "getCatchObjectStack", {}, {}, p.stack_of(t_catch), dflt,
      nat_rt_getcatchobjectstack);
    n(p.c_runtime, true, "setCatchUnchecked", {t_catch_unchecked}, {"myCatch"}, kNoType,
      dflt, nat_rt_setcatchunchecked);
    n(p.c_runtime, true, "getCatchUnchecked", {}, {}, t_catch_unchecked, dflt,
      nat_rt_getcatchunchecked);
}

// ---------------------------------------------------------------------------
// mirror factories (Interp members) and the cached array/typeof infos

Value NativeImpls::array_info(Interp& I, TypeId atype) {
    int key = -2 - (int)atype;
    auto it = I.class_info_cache_.find(key);
    if (it != I.class_info_cache_.end()) return it->second;
    ObjPtr o = I.alloc_raw(I.prog.c_array_class_info);
    o->type_override = atype;
    o->m_class = -1;
    o->m_member = 5; // Array
    Value v = Value::of_ref(o);
    I.class_info_cache_[key] = v;
    return v;
}

Value NativeImpls::typeof_info(Interp& I, int cls) {
    int key = INT_MIN / 2 + cls;
    auto it = I.class_info_cache_.find(key);
    if (it != I.class_info_cache_.end()) return it->second;
    ObjPtr o = I.alloc_raw(I.prog.c_class_info);
    o->m_class = cls;
    o->m_method = 1; // describes the class object's type
    o->m_member = 2; // Abstract
    Value v = Value::of_ref(o);
    I.class_info_cache_[key] = v;
    return v;
}

Value array_class_info(Interp& I, TypeId array_type) {
    return NativeImpls::array_info(I, array_type);
}

Value Interp::class_info(int cls) {
    auto it = class_info_cache_.find(cls);
    if (it != class_info_cache_.end()) return it->second;
    const ClassModel& c = prog.classes[cls];
    int mirror = prog.c_class_info;
    int kind = 4; // Normal
    if (c.is_basic) {
        mirror = prog.c_value_class_info;
        kind = 0;
    } else if (c.is_abstract) {
        mirror = prog.c_abstract_class_info;
        kind = 2;
    }
    ObjPtr o = alloc_raw(mirror);
    o->m_class = cls;
    o->m_member = kind;
    Value v = Value::of_ref(o);
    class_info_cache_[cls] = v;
    return v;
}

Value Interp::method_info(int mid) {
    auto it = method_info_cache_.find(mid);
    if (it != method_info_cache_.end()) return it->second;
    const MethodModel& m = prog.methods[mid];
    Value v;
    if (m.is_init) {
        ObjPtr o = alloc_raw(m.on_object ? prog.c_object_init_method_info
                                         : prog.c_class_init_method_info);
        o->m_method = mid;
        v = Value::of_ref(o);
    } else if (m.on_object) {
        v = object_method_info(mid, class_object(m.owner));
    } else {
        ObjPtr o = alloc_raw(prog.c_class_method_info);
        o->m_method = mid;
        v = Value::of_ref(o);
    }
    method_info_cache_[mid] = v;
    return v;
}

Value Interp::object_method_info(int mid, const Value& recv) {
    ObjPtr o = alloc_raw(prog.c_object_method_info);
    o->m_method = mid;
    o->m_obj = recv;
    return Value::of_ref(o);
}

Value Interp::any_object_info(const Value& v) {
    bool cls_obj = v.is_ref() && v.ref->is_class_object;
    ObjPtr o = alloc_raw(cls_obj ? prog.c_class_object_info : prog.c_object_info);
    o->m_obj = v;
    o->m_class = runtime_class(v);
    return Value::of_ref(o);
}

Value Interp::class_object_info(int cls) {
    return any_object_info(class_object(cls));
}

Value Interp::instance_variable_info(int cls, int field_index) {
    ObjPtr o = alloc_raw(prog.c_class_ivar_info);
    o->m_class = cls;
    o->m_member = field_index;
    o->m_method = 0;
    return Value::of_ref(o);
}

}  // namespace green
