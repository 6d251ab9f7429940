// The built-in world: Any and the class-object machinery, the basic classes
// with their class objects, String/DynString, arrays, I/O, and the Green
// prelude (Catch, the exception library, Function). Reflection mirrors and
// Meta live in reflect.cpp / meta.cpp; the build phases are driven from
// builder.cpp.

#include <cerrno>
#include <cfloat>
#include <cinttypes>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <set>
#include <string>

#include "internal.hpp"

namespace green {

// ---------------------------------------------------------------------------
// registration helpers

int declare_class(Program& p, const BuiltinClass& bc) {
    ClassModel c;
    c.name = bc.name;
    c.idx = static_cast<int>(p.classes.size());
    c.is_abstract = bc.is_abstract;
    c.is_basic = bc.is_basic;
    c.basic_tag = bc.basic_tag;
    c.is_wrapper = bc.is_wrapper;
    c.subclassable = bc.subclassable;
    c.has_instance_side = bc.instance_side;
    c.user = false;
    if (bc.super == "-") {
        c.super = -1;
    } else {
        c.super = p.find_class(bc.super.empty() ? "AnyClass" : bc.super);
    }
    if (bc.instance_side && bc.kind != TypeKind::Synth) {
        TypeDescriptor d;
        d.name = bc.name;
        d.kind = bc.kind;
        c.type = p.tt.add(std::move(d));
    }
    TypeDescriptor od;
    od.name = "Type$" + bc.name;
    od.kind = TypeKind::ClassObject;
    c.obj_type = p.tt.add(std::move(od));
    p.class_index[bc.name] = c.idx;
    p.classes.push_back(std::move(c));
    return p.classes.back().idx;
}

int add_native(Program& p, int cls, bool on_object, Visibility vis,
               const std::string& name, std::vector<TypeId> params,
               std::vector<std::string> pnames, TypeId ret, TypeId exc,
               bool variadic, NativeFn fn, int native_a, int native_b) {
    MethodModel m;
    m.name = name;
    m.id = static_cast<int>(p.methods.size());
    m.owner = cls;
    m.on_object = on_object;
    m.vis = vis;
    m.is_init = name == "init";
    if (m.is_init) m.vis = Visibility::Constructor;
    m.variadic = variadic;
    m.params = std::move(params);
    m.param_names = std::move(pnames);
    m.ret = ret;
    m.exc = exc;
    m.native = fn;
    m.native_a = native_a;
    m.native_b = native_b;
    ClassModel& c = p.classes[cls];
    auto& list = on_object ? c.obj_methods : c.methods;
    m.decl_index = static_cast<int>(list.size());
    list.push_back(m.id);
    p.methods.push_back(std::move(m));
    return p.methods.back().id;
}

namespace {

[[noreturn]] void throw_args(Interp& I, const char* cls, std::vector<Value> args) {
    int c = I.prog.find_class(cls);
    I.throw_value(I.new_object(c, std::move(args)));
}

int find_method_by_name(const Program& p, int cls, const char* name) {
    for (int c = cls; c != -1; c = p.classes[c].super)
        for (int mid : p.classes[c].methods)
            if (p.methods[mid].name == name) return mid;
    return -1;
}

}  // namespace

// ---------------------------------------------------------------------------
// basic-value formatting and parsing

std::string format_basic(const Value& v) {
    char buf[64];
    switch (v.tag) {
    case Tag::Bool:   return v.b ? "true" : "false";
    case Tag::Char:   return std::string(1, v.c);
    case Tag::Byte:   std::snprintf(buf, sizeof buf, "%u", (unsigned)v.by); return buf;
    case Tag::Int:    std::snprintf(buf, sizeof buf, "%d", v.i); return buf;
    case Tag::Long:   std::snprintf(buf, sizeof buf, "%" PRId64, v.l); return buf;
    case Tag::Real:   std::snprintf(buf, sizeof buf, "%.6E", (double)v.r); return buf;
    case Tag::Double: std::snprintf(buf, sizeof buf, "%.6E", v.d); return buf;
    default:          return "nil";
    }
}

namespace {

// Strict full-string parses; every basic class object and String.toX share
// these.
bool parse_basic(Tag target, const std::string& s, Value& out) {
    const char* c = s.c_str();
    char* end = nullptr;
    errno = 0;
    switch (target) {
    case Tag::Bool:
        if (s == "true") { out = Value::of_bool(true); return true; }
        if (s == "false") { out = Value::of_bool(false); return true; }
        return false;
    case Tag::Char:
        if (s.size() != 1) return false;
        out = Value::of_char(s[0]);
        return true;
    case Tag::Byte: {
        if (s.empty()) return false;
        long v = 0;
        for (char ch : s) {
            if (ch < '0' || ch > '9') return false;
            v = v * 10 + (ch - '0');
            if (v > 255) return false;
        }
        out = Value::of_byte((uint8_t)v);
        return true;
    }
    case Tag::Int: {
        long long v = std::strtoll(c, &end, 10);
        if (end == c || *end || errno == ERANGE) return false;
        if (v < INT32_MIN || v > INT32_MAX) return false;
        out = Value::of_int((int32_t)v);
        return true;
    }
    case Tag::Long: {
        long long v = std::strtoll(c, &end, 10);
        if (end == c || *end || errno == ERANGE) return false;
        out = Value::of_long(v);
        return true;
    }
    case Tag::Real: {
        float v = std::strtof(c, &end);
        if (end == c || *end || errno == ERANGE || !std::isfinite(v)) return false;
        out = Value::of_real(v);
        return true;
    }
    case Tag::Double: {
        double v = std::strtod(c, &end);
        if (end == c || *end || errno == ERANGE || !std::isfinite(v)) return false;
        out = Value::of_double(v);
        return true;
    }
    default: return false;
    }
}

double numeric_of(const Value& v) {
    switch (v.tag) {
    case Tag::Bool: return v.b ? 1 : 0;
    case Tag::Char: return (double)(unsigned char)v.c;
    case Tag::Byte: return v.by;
    case Tag::Int:  return v.i;
    case Tag::Long: return (double)v.l;
    case Tag::Real: return v.r;
    default:        return v.d;
    }
}

// Guard used by the numeric cast assertions; pure value-level test.
bool cast_value_ok(Tag target, const Value& src) {
    switch (target) {
    case Tag::Bool: return true;
    case Tag::Char:
        if (src.tag == Tag::Byte) return src.by <= 127;
        if (src.tag == Tag::Int) return src.i >= 0 && src.i <= 127;
        return true;
    case Tag::Byte:
        if (src.tag == Tag::Int) return src.i >= 0 && src.i <= 255;
        if (src.tag == Tag::Long) return src.l >= 0 && src.l <= 255;
        return true;
    case Tag::Int:
        if (src.tag == Tag::Long) return src.l >= INT32_MIN && src.l <= INT32_MAX;
        if (src.tag == Tag::Real)
            return src.r > (float)INT32_MIN - 1.0f && src.r < (float)INT32_MAX + 1.0f;
        if (src.tag == Tag::Double)
            return src.d > (double)INT32_MIN - 1.0 && src.d < (double)INT32_MAX + 1.0;
        return true;
    case Tag::Long:
        if (src.tag == Tag::Real)
            return src.r > (float)INT64_MIN && src.r < (float)INT64_MAX;
        if (src.tag == Tag::Double)
            return src.d > (double)INT64_MIN && src.d < (double)INT64_MAX;
        return true;
    case Tag::Real:
        if (src.tag == Tag::Double)
            return src.d == 0.0 || std::isfinite((double)(float)src.d);
        return true;
    default:
        return true;
    }
}

Value convert_basic(Tag target, const Value& src) {
    switch (target) {
    case Tag::Bool:   return Value::of_bool(numeric_of(src) != 0);
    case Tag::Char:   return Value::of_char((char)(int64_t)numeric_of(src));
    case Tag::Byte:   return Value::of_byte((uint8_t)(int64_t)numeric_of(src));
    case Tag::Int:
        if (src.tag == Tag::Real) return Value::of_int((int32_t)src.r);
        if (src.tag == Tag::Double) return Value::of_int((int32_t)src.d);
        return Value::of_int((int32_t)(int64_t)numeric_of(src));
    case Tag::Long:
        if (src.tag == Tag::Real) return Value::of_long((int64_t)src.r);
        if (src.tag == Tag::Double) return Value::of_long((int64_t)src.d);
        if (src.tag == Tag::Long) return src;
        return Value::of_long((int64_t)numeric_of(src));
    case Tag::Real:   return Value::of_real((float)numeric_of(src));
    default:          return Value::of_double(numeric_of(src));
    }
}

const char* cast_exception_of(Tag target) {
    switch (target) {
    case Tag::Bool:   return "AssertionCastBooleanException";
    case Tag::Char:   return "AssertionCastCharException";
    case Tag::Byte:   return "AssertionCastByteException";
    case Tag::Int:    return "AssertionCastIntegerException";
    case Tag::Long:   return "AssertionCastLongException";
    case Tag::Real:   return "AssertionCastRealException";
    default:          return "AssertionCastDoubleException";
    }
}

int basic_class_of_tag(const Program& p, Tag t) {
    switch (t) {
    case Tag::Bool:   return p.c_boolean;
    case Tag::Char:   return p.c_char;
    case Tag::Byte:   return p.c_byte;
    case Tag::Int:    return p.c_integer;
    case Tag::Long:   return p.c_long;
    case Tag::Real:   return p.c_real;
    default:          return p.c_double;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// clone and comparison cores (Any, object Any, and the class-object mirrors)

namespace {

Value clone_rec(Interp& I, const Value& v, bool deep,
                std::map<const Obj*, ObjPtr>& memo) {
    if (!v.is_ref()) return v;
    Obj* o = v.ref.get();
    if (o->is_class_object) return v;  // classes are not copied along
    auto it = memo.find(o);
    if (it != memo.end()) return Value::of_ref(it->second);

    ObjPtr n = std::make_shared<Obj>();
    n->cls = o->cls;
    n->type_override = o->type_override;
    memo[o] = n;
    n->str = o->str;
    n->fields = o->fields;
    n->items = o->items;
    n->iter_pos = o->iter_pos;
    n->shells = o->shells;
    if (o->arr) {
        n->arr = std::make_unique<ArrayRep>(*o->arr);
    }
    if (deep) {
        for (auto& f : n->fields) f = clone_rec(I, f, true, memo);
        for (auto& f : n->items) f = clone_rec(I, f, true, memo);
        if (n->arr)
            for (auto& e : n->arr->elems) e = clone_rec(I, e, true, memo);
        for (auto& s : n->shells) {
            Value sv = clone_rec(I, Value::of_ref(s), true, memo);
            s = sv.ref;
        }
    }
    return Value::of_ref(n);
}

bool same_value(const Value& a, const Value& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
    case Tag::NilRef: return true;
    case Tag::Bool:   return a.b == b.b;
    case Tag::Char:   return a.c == b.c;
    case Tag::Byte:   return a.by == b.by;
    case Tag::Int:    return a.i == b.i;
    case Tag::Long:   return a.l == b.l;
    case Tag::Real:   return a.r == b.r;
    case Tag::Double: return a.d == b.d;
    case Tag::Ref:    return a.ref.get() == b.ref.get();
    default:          return false;
    }
}

bool deep_equal_rec(Interp& I, const Value& a, const Value& b,
                    std::set<std::pair<const Obj*, const Obj*>>& seen) {
    if (!a.is_ref() || !b.is_ref()) return same_value(a, b);
    const Obj* x = a.ref.get();
    const Obj* y = b.ref.get();
    if (x == y) return true;
    if (x->cls != y->cls || x->is_class_object != y->is_class_object) return false;
    if (x->is_class_object) return false;
    if (!seen.insert({x, y}).second) return true;
    if (x->str != y->str) return false;
    if (x->arr || y->arr) {
        if (!x->arr || !y->arr) return false;
        if (x->arr->sizes != y->arr->sizes) return false;
        if (x->arr->elems.size() != y->arr->elems.size()) return false;
        for (size_t i = 0; i < x->arr->elems.size(); i++)
            if (!deep_equal_rec(I, x->arr->elems[i], y->arr->elems[i], seen))
                return false;
    }
    if (x->fields.size() != y->fields.size()) return false;
    for (size_t i = 0; i < x->fields.size(); i++)
        if (!deep_equal_rec(I, x->fields[i], y->fields[i], seen)) return false;
    return true;
}

}  // namespace

Value clone_value(Interp& I, const Value& v, bool deep) {
    std::map<const Obj*, ObjPtr> memo;
    return clone_rec(I, v, deep, memo);
}

bool value_shallow_equal(Interp& I, const Value& a, const Value& b) {
    (void)I;
    if (!a.is_ref() || !b.is_ref()) return same_value(a, b);
    const Obj* x = a.ref.get();
    const Obj* y = b.ref.get();
    if (x == y) return true;
    if (x->cls != y->cls || x->is_class_object || y->is_class_object) return false;
    if (x->str != y->str) return false;
    if (x->arr || y->arr) {
        if (!x->arr || !y->arr) return false;
        if (x->arr->sizes != y->arr->sizes) return false;
        if (x->arr->elems.size() != y->arr->elems.size()) return false;
        for (size_t i = 0; i < x->arr->elems.size(); i++)
            if (!same_value(x->arr->elems[i], y->arr->elems[i])) return false;
    }
    if (x->fields.size() != y->fields.size()) return false;
    for (size_t i = 0; i < x->fields.size(); i++)
        if (!same_value(x->fields[i], y->fields[i])) return false;
    return true;
}

bool value_deep_equal(Interp& I, const Value& a, const Value& b) {
    std::set<std::pair<const Obj*, const Obj*>> seen;
    return deep_equal_rec(I, a, b, seen);
}

bool value_shallow_copy(Interp& I, const Value& dst, const Value& src) {
    (void)I;
    if (!dst.is_ref() || !src.is_ref()) return false;
    Obj* d = dst.ref.get();
    const Obj* s = src.ref.get();
    if (d->cls != s->cls || d->is_class_object || s->is_class_object) return false;
    d->fields = s->fields;
    d->str = s->str;
    if (s->arr) d->arr = std::make_unique<ArrayRep>(*s->arr);
    else d->arr.reset();
    d->items = s->items;
    d->iter_pos = s->iter_pos;
    return true;
}

// ---------------------------------------------------------------------------
// natives: class Any

namespace {

bool is_object_of_core(Interp& I, const Value& v, const Value& aClass) {
    if (!aClass.is_ref() || !aClass.ref->is_class_object) return false;
    if (aClass.ref->type_override != kNoType)  // array(T)[] as a class object
        return v.is_ref() && v.ref->arr &&
               I.prog.tt.type_equal(I.runtime_type(v), aClass.ref->type_override);
    if (v.is_ref() && v.ref->is_class_object)
        return aClass.ref->cls == I.prog.c_any;
    int target = aClass.ref->cls;
    for (int c = I.runtime_class(v); c != -1; c = I.prog.classes[c].super)
        if (c == target) return true;
    return false;
}

Value nat_any_tostring(Interp& I, const MethodModel&, const Value&, std::vector<Value>&) {
    return I.make_string("");
}

Value nat_any_equals(Interp&, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return Value::of_bool(same_value(self, a[0]));
}

Value nat_any_isobjectof(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return Value::of_bool(is_object_of_core(I, self, a[0]));
}

Value nat_any_shallowclone(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return clone_value(I, self, false);
}

Value nat_any_deepclone(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return clone_value(I, self, true);
}

Value nat_any_shallowcopy(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return Value::of_bool(value_shallow_copy(I, self, a[0]));
}

Value nat_any_shallowequal(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return Value::of_bool(value_shallow_equal(I, self, a[0]));
}

Value nat_any_deepequal(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return Value::of_bool(value_deep_equal(I, self, a[0]));
}

Value nat_any_getinfo(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.any_object_info(self);
}

Value nat_any_getclassinfo(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.class_info(I.runtime_class(self));
}

Value nat_any_getclassobject(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.class_object(I.runtime_class(self));
}

// object Any: the delegation methods (p_ is the delegated receiver) and
// basicNew.

Value nat_del_tostring(Interp& I, const MethodModel&, const Value&, std::vector<Value>&) {
    return I.make_string("");
}

Value nat_del_equals(Interp&, const MethodModel&, const Value&, std::vector<Value>& a) {
    return Value::of_bool(same_value(a[0], a[1]));
}

Value nat_del_isobjectof(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return Value::of_bool(is_object_of_core(I, a[0], a[1]));
}

Value nat_del_shallowclone(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return clone_value(I, a[0], false);
}

Value nat_del_deepclone(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return clone_value(I, a[0], true);
}

Value nat_del_shallowcopy(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return Value::of_bool(value_shallow_copy(I, a[0], a[1]));
}

Value nat_del_shallowequal(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return Value::of_bool(value_shallow_equal(I, a[0], a[1]));
}

Value nat_del_deepequal(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return Value::of_bool(value_deep_equal(I, a[0], a[1]));
}

Value nat_del_getinfo(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return I.any_object_info(a[0]);
}

Value nat_basicnew(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    const Value& aClass = a[0];
    if (!aClass.is_ref() || !aClass.ref->is_class_object)
        I.throw_simple("CreationException");
    const ClassModel& c = I.prog.classes[aClass.ref->cls];
    if (!c.has_instance_side || c.is_abstract || c.is_basic || c.is_shell ||
        c.type == kNoType)
        I.throw_simple("CreationException");
    return Value::of_ref(I.alloc_raw(c.idx));
}

// ---------------------------------------------------------------------------
// natives: synthesized class-object methods

Value nat_synth_new(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>& a) {
    ObjPtr o = I.alloc_raw(self.ref->cls);
    I.call(m.native_a, Value::of_ref(o), std::move(a));
    return Value::of_ref(o);
}

Value nat_synth_cast(Interp& I, const MethodModel& m, const Value&, std::vector<Value>& a) {
    const Value& x = a[0];
    if (x.is_nil()) I.throw_simple("MessageSendToNilException");
    Value target = I.class_object(m.native_a);
    if (is_object_of_core(I, x, target)) return x;
    I.throw_simple("TypeErrorException");
}

Value nat_synth_castobject(Interp& I, const MethodModel& m, const Value&, std::vector<Value>& a) {
    const Value& x = a[0];
    if (x.is_ref() && x.ref->is_class_object &&
        I.is_subtype(I.runtime_type(x), I.prog.classes[m.native_a].obj_type))
        return x;
    I.throw_simple("TypeErrorException");
}

Value nat_synth_getassocclassinfo(Interp& I, const MethodModel&, const Value& self,
                                  std::vector<Value>&) {
    return I.class_info(self.ref->cls);
}

Value nat_synth_getinitmethod(Interp& I, const MethodModel&, const Value& self,
                              std::vector<Value>&) {
    const ClassModel& c = I.prog.classes[self.ref->cls];
    for (int mid : c.obj_methods)
        if (I.prog.methods[mid].is_init)
            return I.object_method_info(mid, self);
    return Value::nil();
}

// One native serves every delegating mirror: prepend the class object itself
// and forward to object Any, so shells attached to object Any intercept.
Value nat_mirror_delegate(Interp& I, const MethodModel& m, const Value& self,
                          std::vector<Value>& a) {
    Program& p = I.prog;
    std::vector<TypeId> ps;
    ps.push_back(p.classes[p.c_any].type);
    for (TypeId t : m.params) ps.push_back(t);
    std::vector<Value> args;
    args.reserve(a.size() + 1);
    args.push_back(self);
    for (Value& v : a) args.push_back(std::move(v));
    return I.send_key(I.class_object(p.c_any), m.name,
                      p.sig_key_of(m.name, ps, false), std::move(args));
}

Value nat_comirror_getclassinfo(Interp& I, const MethodModel&, const Value& self,
                                std::vector<Value>&) {
    return I.class_info(self.ref->cls);
}

Value nat_comirror_getclassobject(Interp&, const MethodModel&, const Value& self,
                                  std::vector<Value>&) {
    return self;
}

// ---------------------------------------------------------------------------
// natives: basic values

Value nat_basic_tostring(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(format_basic(self));
}

Value nat_basic_equals(Interp&, const MethodModel&, const Value& self, std::vector<Value>& a) {
    return Value::of_bool(same_value(self, a[0]));
}

Value nat_basic_getbyte(Interp&, const MethodModel& m, const Value& self, std::vector<Value>&) {
    uint64_t bits = self.tag == Tag::Int ? (uint64_t)(uint32_t)self.i : (uint64_t)self.l;
    return Value::of_byte((uint8_t)(bits >> (8 * (m.native_a - 1))));
}

Value nat_basic_getinfo(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.any_object_info(I.box(self));
}

Value nat_basic_getclassinfo(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.class_info(basic_class_of_tag(I.prog, self.tag));
}

Value nat_basic_getclassobject(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.class_object(basic_class_of_tag(I.prog, self.tag));
}

// ---------------------------------------------------------------------------
// natives: basic class objects (casts, guards, limits)

Value nat_co_int_const(Interp&, const MethodModel& m, const Value&, std::vector<Value>&) {
    return Value::of_int(m.native_a);
}

enum LimitSel {
    L_char_min, L_char_max, L_byte_min, L_byte_max, L_int_min, L_int_max,
    L_long_min, L_long_max, L_real_eps, L_real_min, L_real_max,
    L_dbl_eps, L_dbl_min, L_dbl_max,
};

Value nat_co_limit(Interp&, const MethodModel& m, const Value&, std::vector<Value>&) {
    switch (m.native_a) {
    case L_char_min: return Value::of_char('\0');
    case L_char_max: return Value::of_char((char)127);
    case L_byte_min: return Value::of_byte(0);
    case L_byte_max: return Value::of_byte(255);
    case L_int_min:  return Value::of_int(INT32_MIN);
    case L_int_max:  return Value::of_int(INT32_MAX);
    case L_long_min: return Value::of_long(INT64_MIN);
    case L_long_max: return Value::of_long(INT64_MAX);
    case L_real_eps: return Value::of_real(FLT_EPSILON);
    case L_real_min: return Value::of_real(FLT_MIN);
    case L_real_max: return Value::of_real(FLT_MAX);
    case L_dbl_eps:  return Value::of_double(DBL_EPSILON);
    case L_dbl_min:  return Value::of_double(DBL_MIN);
    default:         return Value::of_double(DBL_MAX);
    }
}

Value nat_cast_num(Interp& I, const MethodModel& m, const Value&, std::vector<Value>& a) {
    Tag target = (Tag)m.native_a;
    if (!cast_value_ok(target, a[0])) {
        Value cls = I.class_object(basic_class_of_tag(I.prog, a[0].tag));
        throw_args(I, cast_exception_of(target), {cls, I.box(a[0])});
    }
    return convert_basic(target, a[0]);
}

Value nat_castok_num(Interp&, const MethodModel& m, const Value&, std::vector<Value>& a) {
    return Value::of_bool(cast_value_ok((Tag)m.native_a, a[0]));
}

Value nat_cast_string(Interp& I, const MethodModel& m, const Value&, std::vector<Value>& a) {
    Tag target = (Tag)m.native_a;
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    Value out;
    if (!parse_basic(target, I.str_of(a[0]), out)) {
        Value cls = I.class_object(I.prog.c_string);
        throw_args(I, cast_exception_of(target), {cls, a[0]});
    }
    return out;
}

// Which wrapper classes each basic class object accepts in cast(AnyClass).
bool wrapper_allowed(const Program& p, Tag target, int cls) {
    TypeId b = p.basic_of_wrapper(cls);
    if (b == kNoType) return false;
    Tag src;
    if (b == p.t_char) src = Tag::Char;
    else if (b == p.t_bool) src = Tag::Bool;
    else if (b == p.t_byte) src = Tag::Byte;
    else if (b == p.t_int) src = Tag::Int;
    else if (b == p.t_long) src = Tag::Long;
    else if (b == p.t_real) src = Tag::Real;
    else src = Tag::Double;
    switch (target) {
    case Tag::Char:
    case Tag::Bool:
        return src == Tag::Char || src == Tag::Bool || src == Tag::Byte ||
               src == Tag::Int;
    case Tag::Byte:
        return src == Tag::Char || src == Tag::Bool || src == Tag::Byte ||
               src == Tag::Int;
    case Tag::Int:
        return true;
    case Tag::Long:
    case Tag::Real:
    case Tag::Double:
        return src == Tag::Byte || src == Tag::Int || src == Tag::Long ||
               src == Tag::Real || src == Tag::Double;
    default:
        return false;
    }
}

Value nat_cast_anyclass(Interp& I, const MethodModel& m, const Value&, std::vector<Value>& a) {
    Tag target = (Tag)m.native_a;
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    int cls = I.runtime_class(a[0]);
    if (!wrapper_allowed(I.prog, target, cls)) I.throw_simple("TypeErrorException");
    Value v = I.unbox(a[0]);
    if (!cast_value_ok(target, v)) I.throw_simple("TypeErrorException");
    return convert_basic(target, v);
}

Value nat_castok_anyclass(Interp& I, const MethodModel& m, const Value&, std::vector<Value>& a) {
    if (a[0].is_nil()) return Value::of_bool(false);
    return Value::of_bool(wrapper_allowed(I.prog, (Tag)m.native_a, I.runtime_class(a[0])));
}

// ---------------------------------------------------------------------------
// natives: wrappers

Value nat_wrap_init(Interp&, const MethodModel&, const Value& self, std::vector<Value>& a) {
    self.ref->fields[0] = a[0];
    return Value::nil();
}

Value nat_wrap_getvalue(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return self.ref->fields[0];
}

Value nat_wrap_tostring(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(format_basic(self.ref->fields[0]));
}

Value nat_wrap_equals(Interp&, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (!a[0].is_ref()) return Value::of_bool(false);
    if (a[0].ref->cls != self.ref->cls || a[0].ref->is_class_object)
        return Value::of_bool(false);
    return Value::of_bool(same_value(self.ref->fields[0], a[0].ref->fields[0]));
}

Value nat_wrap_hashcode(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return Value::of_int((int32_t)(int64_t)numeric_of(self.ref->fields[0]));
}

// ---------------------------------------------------------------------------
// natives: String

Value nat_str_init0(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    self.ref->str.clear();
    return Value::nil();
}

Value nat_str_init_str(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil())
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    self.ref->str = I.str_of(a[0]);
    return Value::nil();
}

Value nat_str_init_var(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    std::string out;
    const ArrayRep& pack = *a[0].ref->arr;
    for (const Value& v : pack.elems) {
        if (v.is_nil()) I.throw_simple("MessageSendToNilException");
        out += I.to_string(v);
    }
    self.ref->str = std::move(out);
    return Value::nil();
}

Value nat_str_tostring(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return self;
}

Value nat_str_get(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>& a) {
    const std::string& s = self.ref->str;
    int i = a[0].i;
    if (i < 0 || (size_t)i >= s.size())
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    return Value::of_char(s[i]);
}

Value nat_str_getiter(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    std::vector<Value> items;
    for (char c : self.ref->str) items.push_back(Value::of_char(c));
    return I.make_iter(I.prog.t_char, std::move(items));
}

int cmp_str(const std::string& x, const std::string& y) {
    int c = x.compare(y);
    return c < 0 ? -1 : c > 0 ? 1 : 0;
}

Value nat_str_cmp(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    return Value::of_int(cmp_str(self.ref->str, I.str_of(a[0])));
}

std::string lower_ascii(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c += 32;
    return s;
}

std::string upper_ascii(std::string s) {
    for (char& c : s)
        if (c >= 'a' && c <= 'z') c -= 32;
    return s;
}

Value nat_str_cmpic(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    return Value::of_int(cmp_str(lower_ascii(self.ref->str), lower_ascii(I.str_of(a[0]))));
}

Value nat_str_newconcat(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    return I.make_string(self.ref->str + I.str_of(a[0]));
}

Value nat_str_tochararray(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    const std::string& s = self.ref->str;
    Value arr = I.make_array(I.prog.array_of(I.prog.t_char, 1), {(int64_t)s.size()});
    for (size_t i = 0; i < s.size(); i++) arr.ref->arr->elems[i] = Value::of_char(s[i]);
    return arr;
}

Value nat_str_tochararray_fill(Interp& I, const MethodModel&, const Value& self,
                               std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& s = self.ref->str;
    ArrayRep& r = *a[0].ref->arr;
    size_t n = std::min(s.size(), r.elems.size());
    for (size_t i = 0; i < n; i++) r.elems[i] = Value::of_char(s[i]);
    return Value::of_int((int32_t)n);
}

Value nat_str_tobytearray(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    const std::string& s = self.ref->str;
    Value arr = I.make_array(I.prog.array_of(I.prog.t_byte, 1), {(int64_t)s.size()});
    for (size_t i = 0; i < s.size(); i++)
        arr.ref->arr->elems[i] = Value::of_byte((uint8_t)s[i]);
    return arr;
}

Value nat_str_tobytearray_fill(Interp& I, const MethodModel&, const Value& self,
                               std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    const std::string& s = self.ref->str;
    ArrayRep& r = *a[0].ref->arr;
    size_t n = std::min(s.size(), r.elems.size());
    for (size_t i = 0; i < n; i++) r.elems[i] = Value::of_byte((uint8_t)s[i]);
    return Value::of_int((int32_t)n);
}

Value nat_str_getsize(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return Value::of_int((int32_t)self.ref->str.size());
}

Value nat_str_newlower(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(lower_ascii(self.ref->str));
}

Value nat_str_newupper(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(upper_ascii(self.ref->str));
}

Value nat_str_getsubset(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>& a) {
    const std::string& s = self.ref->str;
    int from = a[0].i, to = a[1].i;
    if (from < 0 || from > to || (size_t)to >= s.size())
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    return I.make_string(s.substr(from, to - from + 1));
}

Value nat_str_search(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    size_t at = self.ref->str.find(I.str_of(a[0]));
    return Value::of_int(at == std::string::npos ? -1 : (int32_t)at);
}

Value nat_str_hashcode(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    uint32_t h = 0;
    for (unsigned char c : self.ref->str) h = h * 31u + c;
    return Value::of_int((int32_t)h);
}

Value nat_str_tox(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>&) {
    Tag target = (Tag)m.native_a;
    Value out;
    if (!parse_basic(target, self.ref->str, out))
        throw_args(I, cast_exception_of(target), {I.class_object(I.prog.c_string), self});
    return out;
}

Value nat_str_toxok(Interp&, const MethodModel& m, const Value& self, std::vector<Value>&) {
    Value out;
    return Value::of_bool(parse_basic((Tag)m.native_a, self.ref->str, out));
}

Value nat_str_todynstring(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_dynstring(self.ref->str);
}

Value nat_str_equals(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (!a[0].is_ref()) return Value::of_bool(false);
    const Obj* o = a[0].ref.get();
    if (o->is_class_object ||
        (o->cls != I.prog.c_string && o->cls != I.prog.c_dynstring))
        return Value::of_bool(false);
    return Value::of_bool(self.ref->str == o->str);
}

// object String: cast(basic) : String

Value nat_stro_cast(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    return I.make_string(format_basic(a[0]));
}

// ---------------------------------------------------------------------------
// natives: DynString

Value nat_dyn_concat(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    self.ref->str += I.str_of(a[0]);
    return Value::nil();
}

Value nat_dyn_prepend(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    self.ref->str = I.str_of(a[0]) + self.ref->str;
    return Value::nil();
}

bool space_char(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

Value nat_dyn_rmspace_begin(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    std::string& s = self.ref->str;
    size_t i = 0;
    while (i < s.size() && space_char(s[i])) i++;
    s.erase(0, i);
    return Value::nil();
}

Value nat_dyn_rmspace_end(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    std::string& s = self.ref->str;
    while (!s.empty() && space_char(s.back())) s.pop_back();
    return Value::nil();
}

Value nat_dyn_removeallch(Interp&, const MethodModel&, const Value& self, std::vector<Value>& a) {
    std::string& s = self.ref->str;
    std::string out;
    for (char c : s)
        if (c != a[0].c) out += c;
    s = std::move(out);
    return Value::nil();
}

Value nat_dyn_remove(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>& a) {
    std::string& s = self.ref->str;
    int from = a[0].i, to = a[1].i;
    if (from < 0 || from > to || (size_t)to >= s.size())
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    s.erase(from, to - from + 1);
    return Value::nil();
}

Value nat_dyn_insert(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>& a) {
    std::string& s = self.ref->str;
    int at = a[0].i;
    if (a[1].is_nil()) I.throw_simple("MessageSendToNilException");
    if (at < 0 || (size_t)at > s.size())
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    s.insert(at, I.str_of(a[1]));
    return Value::nil();
}

Value nat_dyn_add_ch(Interp&, const MethodModel&, const Value& self, std::vector<Value>& a) {
    self.ref->str += a[0].c;
    return Value::nil();
}

Value nat_dyn_add_str(Interp& I, const MethodModel&, const Value& self, std::vector<Value>& a) {
    if (a[0].is_nil()) I.throw_simple("MessageSendToNilException");
    self.ref->str += I.str_of(a[0]);
    return Value::nil();
}

Value nat_dyn_set(Interp& I, const MethodModel& m, const Value& self, std::vector<Value>& a) {
    std::string& s = self.ref->str;
    int i = a[0].i;
    if (i < 0 || (size_t)i >= s.size())
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    s[i] = a[1].c;
    return Value::nil();
}

Value nat_dyn_tolower(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    self.ref->str = lower_ascii(self.ref->str);
    return Value::nil();
}

Value nat_dyn_toupper(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    self.ref->str = upper_ascii(self.ref->str);
    return Value::nil();
}

Value nat_dyn_tostring(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    return I.make_string(self.ref->str);
}

// ---------------------------------------------------------------------------
// natives: DS.Iter / DS.Stack

Value nat_iter_more(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return Value::of_bool((size_t)self.ref->iter_pos < self.ref->items.size());
}

Value nat_iter_next(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    Obj* o = self.ref.get();
    if ((size_t)o->iter_pos >= o->items.size()) {
        TypeId elem = o->type_override == kNoType
                          ? kNoType
                          : I.prog.tt.at(o->type_override).elem;
        return I.prog.zero_value(elem);
    }
    return o->items[o->iter_pos++];
}

Value nat_iter_reset(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    self.ref->iter_pos = 0;
    return Value::nil();
}

Value nat_iter_toarray(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    Obj* o = self.ref.get();
    TypeId elem = I.prog.tt.at(o->type_override).elem;
    Value arr = I.make_array(I.prog.array_of(elem, 1), {(int64_t)o->items.size()});
    arr.ref->arr->elems = o->items;
    return arr;
}

Value nat_stack_getsize(Interp&, const MethodModel&, const Value& self, std::vector<Value>&) {
    return Value::of_int((int32_t)self.ref->items.size());
}

Value nat_stack_getiter(Interp& I, const MethodModel&, const Value& self, std::vector<Value>&) {
    Obj* o = self.ref.get();
    TypeId elem = I.prog.tt.at(o->type_override).elem;
    std::vector<Value> rev(o->items.rbegin(), o->items.rend());
    return I.make_iter(elem, std::move(rev));
}

// ---------------------------------------------------------------------------
// natives: In / Out / OutError / Memory

Value nat_out_write(Interp& I, const MethodModel& m, const Value&, std::vector<Value>& a) {
    std::ostream& os = m.native_b ? I.serr : I.sout;
    for (const Value& v : a[0].ref->arr->elems) {
        if (v.is_nil()) I.throw_simple("MessageSendToNilException");
        os << I.to_string(v);
    }
    if (m.native_a) os << '\n';
    os.flush();
    return Value::nil();
}

Value nat_in_readch(Interp& I, const MethodModel&, const Value&, std::vector<Value>&) {
    int c = I.sin.get();
    if (c == EOF)
        throw_args(I, "AssertionBeforeException",
                   {I.method_info(find_method_by_name(I.prog, I.prog.c_string, "tochar"))});
    return Value::of_char((char)c);
}

Value nat_in_readline(Interp& I, const MethodModel& m, const Value&, std::vector<Value>&) {
    std::string line;
    if (!std::getline(I.sin, line))
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    return I.make_string(line);
}

std::string read_token(std::istream& in) {
    std::string t;
    in >> t;
    return t;
}

Value nat_in_readstring(Interp& I, const MethodModel& m, const Value&, std::vector<Value>&) {
    std::string t = read_token(I.sin);
    if (t.empty())
        throw_args(I, "AssertionBeforeException", {I.method_info(m.id)});
    return I.make_string(t);
}

Value nat_in_readnum(Interp& I, const MethodModel& m, const Value&, std::vector<Value>&) {
    static const char* to_name[] = {"", "", "tochar", "tobyte", "tointeger",
                                    "tolong", "toreal", "todouble"};
    Tag target = (Tag)m.native_a;
    std::string t = read_token(I.sin);
    Value out;
    if (t.empty() || !parse_basic(target, t, out)) {
        const char* n = target == Tag::Bool ? "toboolean" : to_name[(int)target];
        throw_args(I, "AssertionBeforeException",
                   {I.method_info(find_method_by_name(I.prog, I.prog.c_string, n))});
    }
    return out;
}

Value nat_mem_size(Interp&, const MethodModel&, const Value&, std::vector<Value>&) {
    return Value::of_long(1073741824);
}

Value nat_mem_noop(Interp&, const MethodModel&, const Value&, std::vector<Value>&) {
    return Value::nil();
}

Value nat_array_placeholder(Interp& I, const MethodModel& m, const Value&, std::vector<Value>&) {
    I.throw_internal("array method routed to placeholder: " + m.name);
}

}  // namespace

Value nat_obj_tostring(Interp& I, const MethodModel&, const Value&, std::vector<Value>&) {
    return I.make_string("");
}

Value nat_hard_uncaught(Interp& I, const MethodModel&, const Value&, std::vector<Value>& a) {
    std::string name = a.empty() || a[0].is_nil() ? "Exception" : I.class_name_of(a[0]);
    I.serr << "Exception " << name << " not caught\n";
    I.serr.flush();
    throw ExitSignal{1};
}

// ---------------------------------------------------------------------------
// declaration of the native classes

void builtin_declare(Program& p) {
    auto cls = [&](const char* name, const char* super, TypeKind kind,
                   bool abs, bool inst, bool subc) {
        BuiltinClass b;
        b.name = name;
        b.super = super;
        b.kind = kind;
        b.is_abstract = abs;
        b.instance_side = inst;
        b.subclassable = subc;
        return declare_class(p, b);
    };

    p.c_any = cls("Any", "-", TypeKind::Class, true, true, true);
    p.c_any_value = cls("AnyValue", "-", TypeKind::Class, true, true, false);
    p.c_any_class = cls("AnyClass", "Any", TypeKind::Class, true, true, true);
    p.c_any_class_object = cls("AnyClassObject", "Any", TypeKind::Class, true, true, false);
    p.c_nil = cls("Nil", "Any", TypeKind::NilT, true, true, false);
    p.t_nil = p.classes[p.c_nil].type;

    auto basic = [&](const char* name, Tag tag) {
        BuiltinClass b;
        b.name = name;
        b.super = "AnyValue";
        b.kind = TypeKind::Basic;
        b.is_basic = true;
        b.basic_tag = tag;
        b.instance_side = true;
        b.subclassable = false;
        int idx = declare_class(p, b);
        return idx;
    };
    p.c_char = basic("char", Tag::Char);
    p.c_boolean = basic("boolean", Tag::Bool);
    p.c_byte = basic("byte", Tag::Byte);
    p.c_integer = basic("integer", Tag::Int);
    p.c_long = basic("long", Tag::Long);
    p.c_real = basic("real", Tag::Real);
    p.c_double = basic("double", Tag::Double);
    p.t_char = p.classes[p.c_char].type;
    p.t_bool = p.classes[p.c_boolean].type;
    p.t_byte = p.classes[p.c_byte].type;
    p.t_int = p.classes[p.c_integer].type;
    p.t_long = p.classes[p.c_long].type;
    p.t_real = p.classes[p.c_real].type;
    p.t_double = p.classes[p.c_double].type;

    auto wrapper = [&](const char* name) {
        BuiltinClass b;
        b.name = name;
        b.super = "AnyClass";
        b.is_wrapper = true;
        b.instance_side = true;
        b.subclassable = false;
        return declare_class(p, b);
    };
    p.c_wchar = wrapper("Char");
    p.c_wboolean = wrapper("Boolean");
    p.c_wbyte = wrapper("Byte");
    p.c_winteger = wrapper("Integer");
    p.c_wlong = wrapper("Long");
    p.c_wreal = wrapper("Real");
    p.c_wdouble = wrapper("Double");

    p.c_string = cls("String", "AnyClass", TypeKind::Class, false, true, false);
    p.c_dynstring = cls("DynString", "String", TypeKind::Class, false, true, false);

    p.c_any_array = cls("AnyArray", "Any", TypeKind::Class, true, true, false);
    p.c_any_class_array = cls("AnyClassArray", "AnyArray", TypeKind::Class, true, true, false);
    p.tt.any_array = p.classes[p.c_any_array].type;
    p.tt.any_class_array = p.classes[p.c_any_class_array].type;

    p.c_iter = cls("DS.Iter", "AnyClass", TypeKind::Synth, false, true, false);
    p.c_stack = cls("DS.Stack", "AnyClass", TypeKind::Synth, false, true, false);

    p.c_in = cls("In", "AnyClass", TypeKind::Class, false, false, false);
    p.c_out = cls("Out", "AnyClass", TypeKind::Class, false, false, false);
    p.c_outerror = cls("OutError", "AnyClass", TypeKind::Class, false, false, false);
    p.c_memory = cls("Memory", "AnyClass", TypeKind::Class, false, false, false);
    p.c_runtime = cls("Runtime", "AnyClass", TypeKind::Class, false, false, false);

    reflect_declare(p);
    meta_declare(p);
}

// ---------------------------------------------------------------------------
// definitions of the native methods

namespace {

MethodSignature msig(std::string name, std::vector<TypeId> params, TypeId ret,
                     TypeId exc, bool variadic = false) {
    MethodSignature s;
    s.name = std::move(name);
    s.params = std::move(params);
    s.ret = ret;
    s.exception = exc;
    s.variadic = variadic;
    return s;
}

}  // namespace

void builtin_define(Program& p) {
    const TypeId t_any = p.classes[p.c_any].type;
    const TypeId t_anyclass = p.classes[p.c_any_class].type;
    const TypeId t_aco = p.classes[p.c_any_class_object].type;
    const TypeId t_str = p.classes[p.c_string].type;
    const TypeId t_dyn = p.classes[p.c_dynstring].type;
    const TypeId t_ci = p.classes[p.c_class_info].type;
    const TypeId t_aoi = p.classes[p.c_any_object_info].type;
    auto catch_type = [&](const char* name) {
        int c = p.find_class(name);
        return c == -1 ? kNoType : p.classes[c].type;
    };
    // the default exception parameter; the catch classes are declared by now
    const TypeId dflt = catch_type("CatchUncheckedException");
    const TypeId exc_oom = catch_type("CatchOutOfMemoryException");
    const TypeId exc_creation = catch_type("CatchCreationException");

    // --- the Any interface, stashed for array/iter/stack descriptors
    p.any_sigs = {
        msig("toString", {}, t_str, dflt),
        msig("equals", {t_any}, p.t_bool, dflt),
        msig("isObjectOf", {t_aco}, p.t_bool, dflt),
        msig("shallowClone", {}, t_any, exc_oom),
        msig("deepClone", {}, t_any, exc_oom),
        msig("shallowCopy", {t_any}, p.t_bool, dflt),
        msig("shallowEqual", {t_any}, p.t_bool, dflt),
        msig("deepEqual", {t_any}, p.t_bool, dflt),
        msig("getInfo", {}, t_aoi, dflt),
        msig("getClassInfo", {}, t_ci, dflt),
        msig("getClassObject", {}, t_aco, dflt),
    };

    auto pub = Visibility::Public;
    auto n = [&](int cls, bool obj, const std::string& name, std::vector<TypeId> ps,
                 std::vector<std::string> ns, TypeId ret, TypeId exc, NativeFn fn,
                 int a = -1, int b = -1) {
        return add_native(p, cls, obj, pub, name, std::move(ps), std::move(ns),
                          ret, exc, false, fn, a, b);
    };

    // --- class Any
    n(p.c_any, false, "toString", {}, {}, t_str, dflt, nat_any_tostring);
    n(p.c_any, false, "equals", {t_any}, {"other"}, p.t_bool, dflt, nat_any_equals);
    n(p.c_any, false, "isObjectOf", {t_aco}, {"aClass"}, p.t_bool, dflt, nat_any_isobjectof);
    n(p.c_any, false, "shallowClone", {}, {}, t_any, exc_oom, nat_any_shallowclone);
    n(p.c_any, false, "deepClone", {}, {}, t_any, exc_oom, nat_any_deepclone);
    n(p.c_any, false, "shallowCopy", {t_any}, {"other"}, p.t_bool, dflt, nat_any_shallowcopy);
    n(p.c_any, false, "shallowEqual", {t_any}, {"other"}, p.t_bool, dflt, nat_any_shallowequal);
    n(p.c_any, false, "deepEqual", {t_any}, {"other"}, p.t_bool, dflt, nat_any_deepequal);
    n(p.c_any, false, "getInfo", {}, {}, t_aoi, dflt, nat_any_getinfo);
    n(p.c_any, false, "getClassInfo", {}, {}, t_ci, dflt, nat_any_getclassinfo);
    n(p.c_any, false, "getClassObject", {}, {}, t_aco, dflt, nat_any_getclassobject);

    // --- object Any: delegation + basicNew
    n(p.c_any, true, "toString", {t_any}, {"p_any"}, t_str, dflt, nat_del_tostring);
    n(p.c_any, true, "equals", {t_any, t_any}, {"p_any", "other"}, p.t_bool, dflt, nat_del_equals);
    n(p.c_any, true, "isObjectOf", {t_any, t_aco}, {"p_any", "aClass"}, p.t_bool, dflt,
      nat_del_isobjectof);
    n(p.c_any, true, "shallowClone", {t_any}, {"p_any"}, t_any, exc_oom, nat_del_shallowclone);
    n(p.c_any, true, "deepClone", {t_any}, {"p_any"}, t_any, exc_oom, nat_del_deepclone);
    n(p.c_any, true, "shallowCopy", {t_any, t_any}, {"p_any", "other"}, p.t_bool, dflt,
      nat_del_shallowcopy);
    n(p.c_any, true, "shallowEqual", {t_any, t_any}, {"p_any", "other"}, p.t_bool, dflt,
      nat_del_shallowequal);
    n(p.c_any, true, "deepEqual", {t_any, t_any}, {"p_any", "other"}, p.t_bool, dflt,
      nat_del_deepequal);
    n(p.c_any, true, "getInfo", {t_any}, {"p_any"}, t_aoi, dflt, nat_del_getinfo);
    n(p.c_any, true, "basicNew", {t_aco}, {"aClass"}, t_anyclass, exc_creation, nat_basicnew);

    // --- AnyValue (abstract interface of the basics)
    {
        int m;
        m = n(p.c_any_value, false, "toString", {}, {}, t_str, dflt, nullptr);
        p.methods[m].is_abstract = true;
        m = n(p.c_any_value, false, "getInfo", {}, {}, t_aoi, dflt, nullptr);
        p.methods[m].is_abstract = true;
        m = n(p.c_any_value, false, "getClassInfo", {}, {}, t_ci, dflt, nullptr);
        p.methods[m].is_abstract = true;
        m = n(p.c_any_value, false, "getClassObject", {}, {}, t_aco, dflt, nullptr);
        p.methods[m].is_abstract = true;
    }

    // --- basics: instance sides
    struct BasicDef { int cls; TypeId type; Tag tag; };
    const BasicDef basics[] = {
        {p.c_char, p.t_char, Tag::Char},     {p.c_boolean, p.t_bool, Tag::Bool},
        {p.c_byte, p.t_byte, Tag::Byte},     {p.c_integer, p.t_int, Tag::Int},
        {p.c_long, p.t_long, Tag::Long},     {p.c_real, p.t_real, Tag::Real},
        {p.c_double, p.t_double, Tag::Double},
    };
    for (const BasicDef& b : basics) {
        n(b.cls, false, "toString", {}, {}, t_str, dflt, nat_basic_tostring);
        n(b.cls, false, "equals", {b.type}, {"other"}, p.t_bool, dflt, nat_basic_equals);
        n(b.cls, false, "getInfo", {}, {}, t_aoi, dflt, nat_basic_getinfo);
        n(b.cls, false, "getClassInfo", {}, {}, t_ci, dflt, nat_basic_getclassinfo);
        n(b.cls, false, "getClassObject", {}, {}, t_aco, dflt, nat_basic_getclassobject);
    }
    for (int i = 1; i <= 4; i++)
        n(p.c_integer, false, "getByte" + std::to_string(i), {}, {}, p.t_byte, dflt,
          nat_basic_getbyte, i);
    for (int i = 1; i <= 8; i++)
        n(p.c_long, false, "getByte" + std::to_string(i), {}, {}, p.t_byte, dflt,
          nat_basic_getbyte, i);

    // --- basics: class objects (size, limits, casts, guards)
    struct SrcDef { TypeId type; Tag tag; const char* name; };
    const SrcDef all_srcs[] = {
        {p.t_char, Tag::Char, "ch"},   {p.t_bool, Tag::Bool, "b"},
        {p.t_byte, Tag::Byte, "by"},   {p.t_int, Tag::Int, "i"},
        {p.t_long, Tag::Long, "l"},    {p.t_real, Tag::Real, "r"},
        {p.t_double, Tag::Double, "d"},
    };
    auto co_casts = [&](int cls, Tag target, TypeId tty,
                        std::initializer_list<Tag> num_srcs) {
        n(cls, true, "cast", {t_str}, {"s"}, tty, dflt, nat_cast_string, (int)target);
        n(cls, true, "cast", {t_anyclass}, {"x"}, tty, catch_type("CatchTypeErrorException"),
          nat_cast_anyclass, (int)target);
        n(cls, true, "castOk", {t_anyclass}, {"x"}, p.t_bool, dflt, nat_castok_anyclass,
          (int)target);
        for (Tag s : num_srcs) {
            const SrcDef* sd = nullptr;
            for (const SrcDef& q : all_srcs)
                if (q.tag == s) sd = &q;
            n(cls, true, "cast", {sd->type}, {sd->name}, tty, dflt, nat_cast_num, (int)target);
            n(cls, true, "castOk", {sd->type}, {sd->name}, p.t_bool, dflt, nat_castok_num,
              (int)target);
        }
    };
    auto co_size = [&](int cls, int bytes) {
        n(cls, true, "getSize", {}, {}, p.t_int, dflt, nat_co_int_const, bytes);
        n(cls, true, "getSizeInBits", {}, {}, p.t_int, dflt, nat_co_int_const, bytes * 8);
    };

    co_size(p.c_char, 1);
    co_casts(p.c_char, Tag::Char, p.t_char, {Tag::Byte, Tag::Int});
    n(p.c_char, true, "getMinValue", {}, {}, p.t_char, dflt, nat_co_limit, L_char_min);
    n(p.c_char, true, "getMaxValue", {}, {}, p.t_char, dflt, nat_co_limit, L_char_max);
    n(p.c_char, true, "getMaxIntegerChar", {}, {}, p.t_int, dflt, nat_co_int_const, 127);
    n(p.c_char, true, "getMinIntegerChar", {}, {}, p.t_int, dflt, nat_co_int_const, 0);

    co_size(p.c_boolean, 1);
    co_casts(p.c_boolean, Tag::Bool, p.t_bool, {Tag::Byte, Tag::Int});

    co_size(p.c_byte, 1);
    co_casts(p.c_byte, Tag::Byte, p.t_byte, {Tag::Char, Tag::Bool, Tag::Int});
    n(p.c_byte, true, "getMinValue", {}, {}, p.t_byte, dflt, nat_co_limit, L_byte_min);
    n(p.c_byte, true, "getMaxValue", {}, {}, p.t_byte, dflt, nat_co_limit, L_byte_max);

    co_size(p.c_integer, 4);
    co_casts(p.c_integer, Tag::Int, p.t_int,
             {Tag::Char, Tag::Bool, Tag::Byte, Tag::Long, Tag::Real, Tag::Double});
    n(p.c_integer, true, "getMinValue", {}, {}, p.t_int, dflt, nat_co_limit, L_int_min);
    n(p.c_integer, true, "getMaxValue", {}, {}, p.t_int, dflt, nat_co_limit, L_int_max);

    co_size(p.c_long, 8);
    co_casts(p.c_long, Tag::Long, p.t_long,
             {Tag::Byte, Tag::Int, Tag::Real, Tag::Double});
    n(p.c_long, true, "getMinValue", {}, {}, p.t_long, dflt, nat_co_limit, L_long_min);
    n(p.c_long, true, "getMaxValue", {}, {}, p.t_long, dflt, nat_co_limit, L_long_max);

    co_size(p.c_real, 4);
    co_casts(p.c_real, Tag::Real, p.t_real,
             {Tag::Byte, Tag::Int, Tag::Long, Tag::Double});
    n(p.c_real, true, "getMinValue", {}, {}, p.t_real, dflt, nat_co_limit, L_real_min);
    n(p.c_real, true, "getMaxValue", {}, {}, p.t_real, dflt, nat_co_limit, L_real_max);
    n(p.c_real, true, "getEpsilon", {}, {}, p.t_real, dflt, nat_co_limit, L_real_eps);
    n(p.c_real, true, "getRadix", {}, {}, p.t_int, dflt, nat_co_int_const, 2);
    n(p.c_real, true, "getRounds", {}, {}, p.t_int, dflt, nat_co_int_const, 1);
    n(p.c_real, true, "getPrecision", {}, {}, p.t_int, dflt, nat_co_int_const, 6);
    n(p.c_real, true, "getMantDig", {}, {}, p.t_int, dflt, nat_co_int_const, 24);
    n(p.c_real, true, "getMaxExp", {}, {}, p.t_int, dflt, nat_co_int_const, 128);
    n(p.c_real, true, "getMinExp", {}, {}, p.t_int, dflt, nat_co_int_const, -125);

    co_size(p.c_double, 8);
    co_casts(p.c_double, Tag::Double, p.t_double,
             {Tag::Byte, Tag::Int, Tag::Long, Tag::Real});
    n(p.c_double, true, "getMinValue", {}, {}, p.t_double, dflt, nat_co_limit, L_dbl_min);
    n(p.c_double, true, "getMaxValue", {}, {}, p.t_double, dflt, nat_co_limit, L_dbl_max);
    n(p.c_double, true, "getEpsilon", {}, {}, p.t_double, dflt, nat_co_limit, L_dbl_eps);
    n(p.c_double, true, "getRadix", {}, {}, p.t_int, dflt, nat_co_int_const, 2);
    n(p.c_double, true, "getRounds", {}, {}, p.t_int, dflt, nat_co_int_const, 1);
    n(p.c_double, true, "getPrecision", {}, {}, p.t_int, dflt, nat_co_int_const, 15);
    n(p.c_double, true, "getMantDig", {}, {}, p.t_int, dflt, nat_co_int_const, 53);
    n(p.c_double, true, "getMaxExp", {}, {}, p.t_int, dflt, nat_co_int_const, 1024);
    n(p.c_double, true, "getMinExp", {}, {}, p.t_int, dflt, nat_co_int_const, -1021);

    // --- wrappers
    {
        struct WrapDef { int cls; TypeId type; };
        const WrapDef wraps[] = {
            {p.c_wchar, p.t_char},   {p.c_wboolean, p.t_bool}, {p.c_wbyte, p.t_byte},
            {p.c_winteger, p.t_int}, {p.c_wlong, p.t_long},    {p.c_wreal, p.t_real},
            {p.c_wdouble, p.t_double},
        };
        for (const WrapDef& w : wraps) {
            FieldModel f;
            f.name = "value";
            f.type = w.type;
            f.slot = 0;
            p.classes[w.cls].fields.push_back(f);
            add_native(p, w.cls, false, Visibility::Constructor, "init", {w.type},
                       {"p_value"}, kNoType, dflt, false, nat_wrap_init);
            n(w.cls, false, "getValue", {}, {}, w.type, dflt, nat_wrap_getvalue);
            n(w.cls, false, "toString", {}, {}, t_str, dflt, nat_wrap_tostring);
            n(w.cls, false, "equals", {t_any}, {"other"}, p.t_bool, dflt, nat_wrap_equals);
            n(w.cls, false, "hashCode", {}, {}, p.t_int, dflt, nat_wrap_hashcode);
        }
    }

    // --- String
    add_native(p, p.c_string, false, Visibility::Constructor, "init", {t_str}, {"s"},
               kNoType, dflt, false, nat_str_init_str);
    add_native(p, p.c_string, false, Visibility::Constructor, "init",
               {p.array_of(t_any, 1)}, {"values"}, kNoType, dflt, true, nat_str_init_var);
    n(p.c_string, false, "toString", {}, {}, t_str, dflt, nat_str_tostring);
    n(p.c_string, false, "equals", {t_any}, {"other"}, p.t_bool, dflt, nat_str_equals);
    n(p.c_string, false, "get", {p.t_int}, {"index"}, p.t_char, dflt, nat_str_get);
    n(p.c_string, false, "getIter", {}, {}, p.iter_of(p.t_char), dflt, nat_str_getiter);
    n(p.c_string, false, "cmp", {t_str}, {"other"}, p.t_int, dflt, nat_str_cmp);
    n(p.c_string, false, "cmpIgnoreCase", {t_str}, {"other"}, p.t_int, dflt, nat_str_cmpic);
    n(p.c_string, false, "newConcat", {t_str}, {"other"}, t_str, exc_oom, nat_str_newconcat);
    n(p.c_string, false, "tocharArray", {}, {}, p.array_of(p.t_char, 1), dflt,
      nat_str_tochararray);
    n(p.c_string, false, "tocharArray", {p.array_of(p.t_char, 1)}, {"fill"}, p.t_int, dflt,
      nat_str_tochararray_fill);
    n(p.c_string, false, "tobyteArray", {}, {}, p.array_of(p.t_byte, 1), dflt,
      nat_str_tobytearray);
    n(p.c_string, false, "tobyteArray", {p.array_of(p.t_byte, 1)}, {"fill"}, p.t_int, dflt,
      nat_str_tobytearray_fill);
    n(p.c_string, false, "getSize", {}, {}, p.t_int, dflt, nat_str_getsize);
    n(p.c_string, false, "newToLowerCase", {}, {}, t_str, exc_oom, nat_str_newlower);
    n(p.c_string, false, "newToUpperCase", {}, {}, t_str, exc_oom, nat_str_newupper);
    n(p.c_string, false, "getSubset", {p.t_int, p.t_int}, {"from", "to"}, t_str, exc_oom,
      nat_str_getsubset);
    n(p.c_string, false, "search", {t_str}, {"sub"}, p.t_int, dflt, nat_str_search);
    n(p.c_string, false, "hashCode", {}, {}, p.t_int, dflt, nat_str_hashcode);
    n(p.c_string, false, "toDynString", {}, {}, t_dyn, exc_oom, nat_str_todynstring);
    {
        struct ToX { const char* name; const char* ok; Tag tag; TypeId type; };
        const ToX tox[] = {
            {"tochar", "tocharOk", Tag::Char, p.t_char},
            {"toboolean", "tobooleanOk", Tag::Bool, p.t_bool},
            {"tobyte", "tobyteOk", Tag::Byte, p.t_byte},
            {"tointeger", "tointegerOk", Tag::Int, p.t_int},
            {"tolong", "tolongOk", Tag::Long, p.t_long},
            {"toreal", "torealOk", Tag::Real, p.t_real},
            {"todouble", "todoubleOk", Tag::Double, p.t_double},
        };
        for (const ToX& t : tox) {
            n(p.c_string, false, t.name, {}, {}, t.type, dflt, nat_str_tox, (int)t.tag);
            n(p.c_string, false, t.ok, {}, {}, p.t_bool, dflt, nat_str_toxok, (int)t.tag);
        }
    }
    // object String: formatted casts from every basic
    for (const SrcDef& s : all_srcs)
        n(p.c_string, true, "cast", {s.type}, {s.name}, t_str, dflt, nat_stro_cast);

    // --- DynString (mutating variants; reads are inherited)
    add_native(p, p.c_dynstring, false, Visibility::Constructor, "init", {}, {},
               kNoType, dflt, false, nat_str_init0);
    add_native(p, p.c_dynstring, false, Visibility::Constructor, "init", {t_str}, {"s"},
               kNoType, dflt, false, nat_str_init_str);
    add_native(p, p.c_dynstring, false, Visibility::Constructor, "init",
               {p.array_of(t_any, 1)}, {"values"}, kNoType, dflt, true, nat_str_init_var);
    n(p.c_dynstring, false, "toString", {}, {}, t_str, dflt, nat_dyn_tostring);
    n(p.c_dynstring, false, "toDynString", {}, {}, t_dyn, exc_oom, nat_str_todynstring);
    n(p.c_dynstring, false, "concat", {t_str}, {"other"}, kNoType, exc_oom, nat_dyn_concat);
    n(p.c_dynstring, false, "prepend", {t_str}, {"other"}, kNoType, exc_oom, nat_dyn_prepend);
    n(p.c_dynstring, false, "removeSpaceBegin", {}, {}, kNoType, dflt, nat_dyn_rmspace_begin);
    n(p.c_dynstring, false, "removeSpaceEnd", {}, {}, kNoType, dflt, nat_dyn_rmspace_end);
    n(p.c_dynstring, false, "removeAllCh", {p.t_char}, {"ch"}, kNoType, dflt,
      nat_dyn_removeallch);
    n(p.c_dynstring, false, "remove", {p.t_int, p.t_int}, {"from", "to"}, kNoType, dflt,
      nat_dyn_remove);
    n(p.c_dynstring, false, "insert", {p.t_int, t_str}, {"at", "s"}, kNoType, exc_oom,
      nat_dyn_insert);
    n(p.c_dynstring, false, "add", {p.t_char}, {"ch"}, kNoType, exc_oom, nat_dyn_add_ch);
    n(p.c_dynstring, false, "add", {t_str}, {"s"}, kNoType, exc_oom, nat_dyn_add_str);
    n(p.c_dynstring, false, "set", {p.t_int, p.t_char}, {"index", "ch"}, kNoType, dflt,
      nat_dyn_set);
    n(p.c_dynstring, false, "toLowerCase", {}, {}, kNoType, dflt, nat_dyn_tolower);
    n(p.c_dynstring, false, "toUpperCase", {}, {}, kNoType, dflt, nat_dyn_toupper);

    // --- AnyArray interface (placeholders: the interpreter routes array sends
    //     by name straight onto the representation)
    {
        const TypeId exc_arr = catch_type("CatchAnyArrayException");
        const TypeId ints = p.array_of(p.t_int, 1);
        n(p.c_any_array, false, "set", {t_any, p.t_int}, {"v", "i"}, kNoType, exc_arr,
          nat_array_placeholder);
        n(p.c_any_array, false, "set", {t_any, p.t_int, p.t_int}, {"v", "i", "j"}, kNoType,
          exc_arr, nat_array_placeholder);
        add_native(p, p.c_any_array, false, pub, "set",
                   {t_any, p.t_int, p.t_int, p.t_int, ints},
                   {"v", "i", "j", "k", "others"}, kNoType, exc_arr, true,
                   nat_array_placeholder);
        n(p.c_any_array, false, "get", {p.t_int}, {"i"}, t_any, exc_arr,
          nat_array_placeholder);
        n(p.c_any_array, false, "get", {p.t_int, p.t_int}, {"i", "j"}, t_any, exc_arr,
          nat_array_placeholder);
        add_native(p, p.c_any_array, false, pub, "get", {p.t_int, p.t_int, p.t_int, ints},
                   {"i", "j", "k", "others"}, t_any, exc_arr, true, nat_array_placeholder);
        n(p.c_any_array, false, "getSize", {}, {}, p.t_int, dflt, nat_array_placeholder);
        n(p.c_any_array, false, "toString", {}, {}, t_str, dflt, nat_array_placeholder);
    }

    // --- DS.Iter / DS.Stack cores (per-element types come from descriptors)
    n(p.c_iter, false, "more", {}, {}, p.t_bool, dflt, nat_iter_more);
    n(p.c_iter, false, "next", {}, {}, t_any, dflt, nat_iter_next);
    n(p.c_iter, false, "reset", {}, {}, kNoType, dflt, nat_iter_reset);
    n(p.c_iter, false, "toArray", {}, {}, p.array_of(t_any, 1), dflt, nat_iter_toarray);
    n(p.c_stack, false, "getSize", {}, {}, p.t_int, dflt, nat_stack_getsize);
    n(p.c_stack, false, "getIter", {}, {}, p.iter_of(t_any), dflt, nat_stack_getiter);

    // --- In / Out / OutError / Memory
    add_native(p, p.c_out, true, pub, "write", {p.array_of(t_any, 1)}, {"values"},
               kNoType, dflt, true, nat_out_write, 0, 0);
    add_native(p, p.c_out, true, pub, "writeln", {p.array_of(t_any, 1)}, {"values"},
               kNoType, dflt, true, nat_out_write, 1, 0);
    add_native(p, p.c_outerror, true, pub, "write", {p.array_of(t_any, 1)}, {"values"},
               kNoType, dflt, true, nat_out_write, 0, 1);
    add_native(p, p.c_outerror, true, pub, "writeln", {p.array_of(t_any, 1)}, {"values"},
               kNoType, dflt, true, nat_out_write, 1, 1);

    n(p.c_in, true, "readCh", {}, {}, p.t_char, dflt, nat_in_readch);
    n(p.c_in, true, "readByte", {}, {}, p.t_byte, dflt, nat_in_readnum, (int)Tag::Byte);
    n(p.c_in, true, "readInteger", {}, {}, p.t_int, dflt, nat_in_readnum, (int)Tag::Int);
    n(p.c_in, true, "readLong", {}, {}, p.t_long, dflt, nat_in_readnum, (int)Tag::Long);
    n(p.c_in, true, "readReal", {}, {}, p.t_real, dflt, nat_in_readnum, (int)Tag::Real);
    n(p.c_in, true, "readDouble", {}, {}, p.t_double, dflt, nat_in_readnum, (int)Tag::Double);
    n(p.c_in, true, "readString", {}, {}, t_str, dflt, nat_in_readstring);
    n(p.c_in, true, "readLine", {}, {}, t_str, dflt, nat_in_readline);

    n(p.c_memory, true, "sizeLargestBlock", {}, {}, p.t_long, dflt, nat_mem_size);
    n(p.c_memory, true, "sizeFreeMemory", {}, {}, p.t_long, dflt, nat_mem_size);
    n(p.c_memory, true, "doGarbageCollection", {}, {}, kNoType, dflt, nat_mem_noop);
    n(p.c_memory, true, "collectionOn", {}, {}, kNoType, dflt, nat_mem_noop);
    n(p.c_memory, true, "collectionOff", {}, {}, kNoType, dflt, nat_mem_noop);

    reflect_define(p);
    meta_define(p);
}

// ---------------------------------------------------------------------------
// compiler-added class-object methods

void synthesize_class_object(Program& p, int cls) {
    ClassModel& c = p.classes[cls];
    if (c.is_shell) return;

    auto have_exact = [&](const std::string& name, const std::vector<TypeId>& ps) {
        for (int mid : c.obj_methods) {
            const MethodModel& m = p.methods[mid];
            if (m.name == name && m.params == ps) return true;
        }
        return false;
    };

    const TypeId t_any = p.classes[p.c_any].type;
    const TypeId t_str = p.classes[p.c_string].type;
    const TypeId t_aco = p.classes[p.c_any_class_object].type;
    const TypeId t_ci = p.classes[p.c_class_info].type;
    const TypeId t_aoi = p.classes[p.c_any_object_info].type;
    const TypeId t_oimi = p.classes[p.c_object_init_method_info].type;
    auto catch_type = [&](const char* name) {
        int cc = p.find_class(name);
        return cc == -1 ? kNoType : p.classes[cc].type;
    };
    const TypeId exc_te = catch_type("CatchTypeErrorException");
    const TypeId exc_oom = catch_type("CatchOutOfMemoryException");
    const TypeId dflt = catch_type("CatchUncheckedException");

    auto synth = [&](const std::string& name, std::vector<TypeId> ps,
                     std::vector<std::string> ns, TypeId ret, TypeId exc, NativeFn fn,
                     int a = -1, bool variadic = false) {
        if (have_exact(name, ps)) return -1;
        int id = add_native(p, cls, true, Visibility::Public, name, std::move(ps),
                            std::move(ns), ret, exc, variadic, fn, a);
        p.methods[id].synthesized = true;
        return id;
    };

    // one new per init, carrying the init's own exception contract
    if (c.has_instance_side && !c.is_abstract && !c.is_basic && c.type != kNoType) {
        for (int mid : c.methods) {
            const MethodModel& init = p.methods[mid];
            if (!init.is_init) continue;
            if (have_exact("new", init.params)) continue;
            int id = add_native(p, cls, true, Visibility::Public, "new", init.params,
                                init.param_names, c.type, init.exc, init.variadic,
                                nat_synth_new, mid);
            p.methods[id].synthesized = true;
        }
    }

    if (c.has_instance_side && c.type != kNoType) {
        synth("cast", {t_any}, {"x"}, c.type, exc_te, nat_synth_cast, cls);
        synth("castObject", {t_any}, {"any"}, c.obj_type, exc_te, nat_synth_castobject, cls);
    }
    synth("getAssociateClassInfo", {}, {}, t_ci, dflt, nat_synth_getassocclassinfo, cls);
    synth("getInitMethod", {}, {}, t_oimi, dflt, nat_synth_getinitmethod, cls);

    // the Any interface, mirrored; most delegate through object Any
    synth("toString", {}, {}, t_str, dflt, nat_mirror_delegate);
    synth("equals", {t_any}, {"other"}, p.t_bool, dflt, nat_mirror_delegate);
    synth("isObjectOf", {t_aco}, {"aClass"}, p.t_bool, dflt, nat_mirror_delegate);
    synth("shallowClone", {}, {}, t_any, exc_oom, nat_mirror_delegate);
    synth("deepClone", {}, {}, t_any, exc_oom, nat_mirror_delegate);
    synth("shallowCopy", {t_any}, {"other"}, p.t_bool, dflt, nat_mirror_delegate);
    synth("shallowEqual", {t_any}, {"other"}, p.t_bool, dflt, nat_mirror_delegate);
    synth("deepEqual", {t_any}, {"other"}, p.t_bool, dflt, nat_mirror_delegate);
    synth("getInfo", {}, {}, t_aoi, dflt, nat_mirror_delegate);
    synth("getClassInfo", {}, {}, t_ci, dflt, nat_comirror_getclassinfo);
    synth("getClassObject", {}, {}, t_aco, dflt, nat_comirror_getclassobject);
}

// ---------------------------------------------------------------------------
// the Green prelude

namespace {

void emit_simple_exception(std::string& s, const char* name, const char* super,
                           const char* msg) {
    s += "class ";
    s += name;
    s += " subclassOf ";
    s += super;
    s += "\n  proc init()\n    begin\n    end\n  public:\n"
         "    proc toString() : String\n      begin\n      return \"";
    s += name;
    s += ": ";
    s += msg;
    s += "\";\n      end\nend\n\n";
}

}  // namespace

std::string prelude_source() {
    std::string s;
    s.reserve(32768);

    s += "abstract class Exception\nend\n\n";
    s += "abstract class UncheckedException subclassOf Exception\nend\n\n";
    s += "abstract class MetaException subclassOf Exception\nend\n\n";
    s += "abstract class ArithmeticException subclassOf UncheckedException\nend\n\n";

    emit_simple_exception(s, "TypeErrorException", "Exception",
                          "value is not of the expected class");
    emit_simple_exception(s, "WrongParametersException", "Exception",
                          "wrong number or types of parameters");
    emit_simple_exception(s, "NotFoundException", "Exception",
                          "the requested item was not found");
    emit_simple_exception(s, "CreationException", "Exception",
                          "no object of this class can be created");
    emit_simple_exception(s, "StackOverflowException", "UncheckedException",
                          "the method call stack overflowed");
    emit_simple_exception(s, "OutOfMemoryException", "UncheckedException",
                          "there is no memory left");
    emit_simple_exception(s, "MessageSendToNilException", "UncheckedException",
                          "message send to nil");
    emit_simple_exception(s, "NoReflectiveInfoException", "UncheckedException",
                          "reflective information is not available");
    emit_simple_exception(s, "NoReflectiveBodyInfoException", "NoReflectiveInfoException",
                          "no reflective information about the method body");
    emit_simple_exception(s, "NoReflectiveCallInfoException", "NoReflectiveInfoException",
                          "no reflective information about the call stack");
    emit_simple_exception(s, "DivisionByZeroException", "ArithmeticException",
                          "division by zero");
    emit_simple_exception(s, "RealOverflowException", "ArithmeticException",
                          "overflow in a floating-point operation");
    emit_simple_exception(s, "RealUnderflowException", "ArithmeticException",
                          "underflow in a floating-point operation");

    s += R"(class PackedException subclassOf Exception
  proc init( exc : Exception )
    begin
    packed = exc;
    end
  public:
    proc getException() : Exception
      begin
      return packed;
      end
    proc toString() : String
      begin
      return "PackedException packing: " + packed.toString();
      end
  private:
    var packed : Exception;
end

class TooManyDimensionsException subclassOf Exception
  proc init( givenNumber : integer;  numDimensions : integer )
    begin
    given = givenNumber;
    dims = numDimensions;
    end
  public:
    proc getArrayDimension() : integer
      begin
      return dims;
      end
    proc getGivenNumber() : integer
      begin
      return given;
      end
    proc toString() : String
      begin
      return "TooManyDimensionsException: wrong number of array indices";
      end
  private:
    var given : integer;  dims : integer;
end

class ClassNotInAllowedSetException subclassOf MetaException
  proc init( value : Any )
    begin
    val = value;
    end
  public:
    proc getValue() : Any
      begin
      return val;
      end
    proc toString() : String
      begin
      return "ClassNotInAllowedSetException: class not in the allowed set";
      end
  private:
    var val : Any;
end

class NoShellException subclassOf MetaException
  proc init( any : Any )
    begin
    obj = any;
    end
  public:
    proc getObject() : Any
      begin
      return obj;
      end
    proc toString() : String
      begin
      return "NoShellException: the object has no shell";
      end
  private:
    var obj : Any;
end

class NoExtensionException subclassOf MetaException
  proc init( aClass : AnyClassObject )
    begin
    theClassObject = aClass;
    end
  public:
    proc getTheClassObject() : AnyClassObject
      begin
      return theClassObject;
      end
    proc toString() : String
      begin
      return "NoExtensionException: the class has no extension";
      end
  private:
    var theClassObject : AnyClassObject;
end

class IllegalArrayIndexException subclassOf UncheckedException
  proc init( index : integer;  theArray : AnyArray )
    begin
    idx = index;
    arr = theArray;
    end
  public:
    proc getIndex() : integer
      begin
      return idx;
      end
    proc getArray() : AnyArray
      begin
      return arr;
      end
    proc toString() : String
      begin
      return "IllegalArrayIndexException: array index out of range";
      end
  private:
    var idx : integer;  arr : AnyArray;
end

class InternalErrorException subclassOf UncheckedException
  proc init( s : String )
    begin
    errorString = s;
    end
  public:
    proc getErrorString() : String
      begin
      return errorString;
      end
    proc toString() : String
      begin
      return "InternalErrorException: " + errorString;
      end
  private:
    var errorString : String;
end

abstract class AssertionException subclassOf UncheckedException
  public:
    proc getMethodInfo() : MethodInfo
      begin
      return nil;
      end
end

class AssertionBeforeException subclassOf AssertionException
  proc init( mi : MethodInfo )
    begin
    methodInfo = mi;
    end
  public:
    proc getMethodInfo() : MethodInfo
      begin
      return methodInfo;
      end
    proc toString() : String
      begin
      return "AssertionBeforeException: a before assertion failed";
      end
  private:
    var methodInfo : MethodInfo;
end

class AssertionAfterException subclassOf AssertionException
  proc init( mi : MethodInfo )
    begin
    methodInfo = mi;
    end
  public:
    proc getMethodInfo() : MethodInfo
      begin
      return methodInfo;
      end
    proc toString() : String
      begin
      return "AssertionAfterException: an after assertion failed";
      end
  private:
    var methodInfo : MethodInfo;
end

)";

    const char* cast_targets[] = {"Char", "Boolean", "Byte", "Integer",
                                  "Long", "Real", "Double"};
    const char* cast_words[] = {"char", "boolean", "byte", "integer",
                                "long", "real", "double"};
    for (int i = 0; i < 7; i++) {
        s += "class AssertionCast";
        s += cast_targets[i];
        s += "Exception subclassOf AssertionException\n"
             "  proc init( p_originalValueClass : AnyClassObject;  p_value : Any )\n"
             "    begin\n"
             "    originalValueClass = p_originalValueClass;\n"
             "    value = p_value;\n"
             "    end\n"
             "  public:\n"
             "    proc getOriginalValueClass() : AnyClassObject\n"
             "      begin\n"
             "      return originalValueClass;\n"
             "      end\n"
             "    proc getOriginalValue() : Any\n"
             "      begin\n"
             "      return value;\n"
             "      end\n"
             "    proc toString() : String\n"
             "      begin\n"
             "      return \"AssertionCast";
        s += cast_targets[i];
        s += "Exception: value cannot be cast to ";
        s += cast_words[i];
        s += "\";\n"
             "      end\n"
             "  private:\n"
             "    var originalValueClass : AnyClassObject;  value : Any;\n"
             "end\n\n";
    }

    s += R"(class Catch
  proc init()
    begin
    initialize();
    end
  public:
    proc initialize()
      begin
      exceptionObject = nil;
      classException = nil;
      wasFixed = false;
      end
    proc set( p_exceptionObject : Exception;
              p_classException : AnyClassObject )
      begin
      exceptionObject = p_exceptionObject;
      classException = p_classException;
      end
    proc getException() : Exception
      begin
      return exceptionObject;
      end
    proc getClassException() : AnyClassObject
      begin
      return classException;
      end
    proc wasThrown() : boolean
      begin
      return exceptionObject <> nil;
      end
    proc fixed() : boolean
      begin
      if wasThrown() and wasFixed
      then
        wasFixed = false;
        return true;
      else
        return false;
      endif
      end
    proc setFixed( p_wasFixed : boolean )
      begin
      wasFixed = p_wasFixed;
      end
  private:
    var exceptionObject : Exception;  classException : AnyClassObject;
        wasFixed : boolean;
end

abstract class Function
  public:
    abstract proc exec();
end

class CatchAnyArrayException subclassOf CatchUncheckedException
  proc init()
    begin
    end
  public:
    proc throw( exc : TypeErrorException )
      begin
      end
    proc throw( exc : TooManyDimensionsException )
      begin
      end
end

class CatchMetaException subclassOf CatchUncheckedException
  proc init()
    begin
    end
  public:
    proc throw( exc : ClassNotInAllowedSetException )
      begin
      end
    proc throw( exc : NoShellException )
      begin
      end
    proc throw( exc : NoExtensionException )
      begin
      end
    proc throw( exc : MetaException )
      begin
      end
end

class HCatchMetaException subclassOf CatchUncheckedException
  proc init()
    begin
    end
  public:
    proc throw( exc : ClassNotInAllowedSetException )
      begin
      end
    proc throw( exc : NoShellException )
      begin
      end
    proc throw( exc : NoExtensionException )
      begin
      end
    proc throw( exc : MetaException )
      begin
      end
end

class CatchInvokePackedException subclassOf CatchUncheckedException
  proc init()
    begin
    end
  public:
    proc throw( exc : WrongParametersException )
      begin
      end
    proc throw( exc : PackedException )
      begin
      end
    proc throw( exc : TypeErrorException )
      begin
      end
end

class CatchNewException subclassOf CatchUncheckedException
  proc init()
    begin
    end
  public:
    proc throw( exc : WrongParametersException )
      begin
      end
    proc throw( exc : PackedException )
      begin
      end
    proc throw( exc : OutOfMemoryException )
      begin
      end
end
)";

    return s;
}

// ---------------------------------------------------------------------------
// synthesized catch classes

namespace {

void emit_catch_state(std::string& s) {
    s += R"(  public:
    proc initialize()
      begin
      exceptionObject = nil;
      classException = nil;
      wasFixed = false;
      end
    proc set( p_exceptionObject : Exception;
              p_classException : AnyClassObject )
      begin
      exceptionObject = p_exceptionObject;
      classException = p_classException;
      end
    proc getException() : Exception
      begin
      return exceptionObject;
      end
    proc getClassException() : AnyClassObject
      begin
      return classException;
      end
    proc wasThrown() : boolean
      begin
      return exceptionObject <> nil;
      end
    proc fixed() : boolean
      begin
      if wasThrown() and wasFixed
      then
        wasFixed = false;
        return true;
      else
        return false;
      endif
      end
    proc setFixed( p_wasFixed : boolean )
      begin
      wasFixed = p_wasFixed;
      end
)";
}

void emit_catch_state_tail(std::string& s) {
    s += "  private:\n"
         "    var exceptionObject : Exception;  classException : AnyClassObject;\n"
         "        wasFixed : boolean;\n"
         "end\n\n";
}

}  // namespace

std::string synthesized_catch_source(const ProgramAST& prelude, const ProgramAST& user) {
    // nominal hierarchy prescan: name -> declared superclass
    std::map<std::string, std::string> super_of;
    std::set<std::string> declared;
    std::vector<std::string> order;
    auto scan = [&](const ProgramAST& ast) {
        for (const ClassAST& c : ast.classes) {
            declared.insert(c.name);
            super_of[c.name] = c.super_name.empty() ? "AnyClass" : c.super_name;
            order.push_back(c.name);
        }
        for (const ClassObjAST& o : ast.objects) declared.insert(o.name);
    };
    scan(prelude);
    scan(user);

    auto reaches = [&](const std::string& name, const char* root) {
        std::string c = name;
        for (int guard = 0; guard < 1000; guard++) {
            if (c == root) return true;
            auto it = super_of.find(c);
            if (it == super_of.end()) return false;
            c = it->second;
            if (c == "AnyClass" || c == "Any") return false;
        }
        return false;
    };

    std::vector<std::string> exceptions, unchecked;
    exceptions.push_back("Exception");
    for (const std::string& name : order) {
        if (name == "Exception") continue;
        if (reaches(name, "Exception")) exceptions.push_back(name);
        if (reaches(name, "UncheckedException")) unchecked.push_back(name);
    }
    unchecked.insert(unchecked.begin(), "UncheckedException");

    std::string s;
    s.reserve(65536);

    // CatchUncheckedException: one rethrowing handler per unchecked class
    s += "class CatchUncheckedException subclassOf Catch\n  proc init()\n    begin\n    end\n  public:\n";
    for (const std::string& e : unchecked) {
        s += "    proc throw( exc : " + e +
             " )( exception : CatchUncheckedException )\n      begin\n      "
             "exception.throw( exc );\n      end\n";
    }
    s += "end\n\n";

    s += "class HCatchUncheckedException subclassOf Catch\n  proc init()\n    begin\n    end\n  public:\n";
    for (const std::string& e : unchecked)
        s += "    proc throw( exc : " + e + " )\n      begin\n      end\n";
    s += "end\n\n";

    s += "class CatchAll subclassOf CatchUncheckedException\n"
         "  proc init()\n    begin\n    end\n  public:\n"
         "    proc throw( exc : Exception )\n      begin\n      end\nend\n\n";
    s += "class HCatchAll subclassOf CatchUncheckedException\n"
         "  proc init()\n    begin\n    end\n  public:\n"
         "    proc throw( exc : Exception )\n      begin\n      end\nend\n\n";

    // the stand-alone catch objects: full state machinery plus handlers,
    // throw( exc : Exception ) declared first
    for (const char* name : {"CatchAll", "HCatchAll"}) {
        s += std::string("object ") + name +
             "\n  proc init()\n    begin\n    initialize();\n    end\n";
        emit_catch_state(s);
        s += "    proc throw( exc : Exception )\n      begin\n      end\n";
        for (const std::string& e : unchecked)
            s += "    proc throw( exc : " + e + " )\n      begin\n      end\n";
        emit_catch_state_tail(s);
    }

    // CatchE / HCatchE for every declared exception class
    for (const std::string& e : exceptions) {
        if (!declared.count("Catch" + e)) {
            s += "class Catch" + e +
                 " subclassOf CatchUncheckedException\n"
                 "  proc init()\n    begin\n    end\n  public:\n"
                 "    proc throw( exc : " + e + " )\n      begin\n      end\nend\n\n";
        }
        if (!declared.count("HCatch" + e)) {
            s += "class HCatch" + e +
                 " subclassOf CatchUncheckedException\n"
                 "  proc init()\n    begin\n    end\n  public:\n"
                 "    proc throw( exc : " + e + " )\n      begin\n      end\nend\n\n";
        }
    }

    return s;
}

}  // namespace green
