#include "green/program.hpp"

#include <algorithm>

namespace green {

TypeId Program::canon(TypeId t) {
    if (t == kNoType) return kNoType;
    auto it = canon_.find(t);
    if (it != canon_.end()) return it->second;
    TypeId best = t;
    for (TypeId s = 0; s < t; ++s) {
        if (tt.at(s).kind == TypeKind::Synth) continue;
        if (tt.type_equal(s, t)) {
            best = s;
            break;
        }
    }
    canon_[t] = best;
    return best;
}

std::string Program::sig_key_of(const std::string& name, const std::vector<TypeId>& params,
                                bool variadic) {
    std::string k = name;
    k += '(';
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) k += ',';
        k += std::to_string(canon(params[i]));
    }
    if (variadic) k += "+";
    k += ')';
    return k;
}

bool Program::class_subclass_of(int sub, int sup) const {
    while (sub >= 0) {
        if (sub == sup) return true;
        sub = classes[sub].super;
    }
    return false;
}

Value Program::zero_value(TypeId t) const {
    if (t == t_bool) return Value::of_bool(false);
    if (t == t_char) return Value::of_char(0);
    if (t == t_byte) return Value::of_byte(0);
    if (t == t_int) return Value::of_int(0);
    if (t == t_long) return Value::of_long(0);
    if (t == t_real) return Value::of_real(0.0f);
    if (t == t_double) return Value::of_double(0.0);
    return Value::nil();
}

int Program::wrapper_of(TypeId basic) const {
    if (basic == t_char) return c_wchar;
    if (basic == t_bool) return c_wboolean;
    if (basic == t_byte) return c_wbyte;
    if (basic == t_int) return c_winteger;
    if (basic == t_long) return c_wlong;
    if (basic == t_real) return c_wreal;
    if (basic == t_double) return c_wdouble;
    return -1;
}

TypeId Program::basic_of_wrapper(int cls) const {
    if (cls < 0) return kNoType;
    if (cls == c_wchar) return t_char;
    if (cls == c_wboolean) return t_bool;
    if (cls == c_wbyte) return t_byte;
    if (cls == c_winteger) return t_int;
    if (cls == c_wlong) return t_long;
    if (cls == c_wreal) return t_real;
    if (cls == c_wdouble) return t_double;
    return kNoType;
}

namespace {

MethodSignature sig(std::string name, std::vector<TypeId> params, TypeId ret, TypeId exc,
                    bool variadic = false) {
    MethodSignature s;
    s.name = std::move(name);
    s.params = std::move(params);
    s.ret = ret;
    s.exception = exc;
    s.variadic = variadic;
    return s;
}

} // namespace

TypeId Program::array_of(TypeId elem, int dims, bool elem_expanded) {
    auto key = std::make_tuple(elem, dims, elem_expanded);
    auto it = arrays_.find(key);
    if (it != arrays_.end()) return it->second;

    TypeDescriptor d;
    d.kind = TypeKind::Array;
    d.elem = dims > 1 ? array_of(elem, dims - 1, elem_expanded) : elem;
    d.elem_expanded = elem_expanded;
    d.name = "array(" + std::string(elem_expanded ? "@" : "") + tt.at(elem).name + ")[" +
             std::string(size_t(dims - 1), ',') + "]";
    TypeId id = tt.add(std::move(d));
    arrays_[key] = id; // before sigs: array(integer)[] appears in its own set/get

    // Arrays answer the Any interface, the AnyArray interface, and the
    // compiler-added per-array methods. Expanded elements are value slots, so
    // those arrays lack every signature that would replace an element.
    TypeId t_any = classes[c_any].type;
    TypeId dflt = c_catch_unchecked >= 0 ? classes[c_catch_unchecked].type : kNoType;
    TypeId t_caa = dflt;
    if (int c = find_class("CatchAnyArrayException"); c >= 0) t_caa = classes[c].type;

    std::vector<MethodSignature> sigs = any_sigs;
    sigs.push_back(sig("getSize", {}, t_int, dflt));
    if (!elem_expanded) {
        sigs.push_back(sig("set", {t_any, t_int}, kNoType, t_caa));
        sigs.push_back(sig("set", {t_any, t_int, t_int}, kNoType, t_caa));
        sigs.push_back(
            sig("set", {t_any, t_int, t_int, t_int, array_of(t_int, 1)}, kNoType, t_caa, true));
    }
    sigs.push_back(sig("get", {t_int}, t_any, t_caa));
    sigs.push_back(sig("get", {t_int, t_int}, t_any, t_caa));
    sigs.push_back(sig("get", {t_int, t_int, t_int, array_of(t_int, 1)}, t_any, t_caa, true));

    std::vector<TypeId> init_params;
    for (int k = 1; k <= dims; ++k) {
        init_params.push_back(t_int);
        sigs.push_back(sig("init", init_params, kNoType, dflt));
    }
    sigs.push_back(sig("reset", {}, kNoType, dflt));
    sigs.push_back(sig("reset", {t_bool}, kNoType, dflt));
    sigs.push_back(sig("more", {}, t_bool, dflt));
    sigs.push_back(sig("next", {}, elem, dflt));
    if (!elem_expanded) sigs.push_back(sig("fill", {elem}, kNoType, dflt));

    tt.at_mut(id).sigs = std::move(sigs);
    return id;
}

TypeId Program::iter_of(TypeId elem) {
    auto it = iters_.find(elem);
    if (it != iters_.end()) return it->second;
    TypeDescriptor d;
    d.kind = TypeKind::Class;
    d.elem = elem;
    d.name = "DS.Iter(" + tt.at(elem).name + ")";
    TypeId id = tt.add(std::move(d));
    iters_[elem] = id;
    TypeId dflt = c_catch_unchecked >= 0 ? classes[c_catch_unchecked].type : kNoType;
    std::vector<MethodSignature> sigs = any_sigs;
    sigs.push_back(sig("more", {}, t_bool, dflt));
    sigs.push_back(sig("next", {}, elem, dflt));
    sigs.push_back(sig("reset", {}, kNoType, dflt));
    sigs.push_back(sig("toArray", {}, array_of(elem, 1), dflt));
    tt.at_mut(id).sigs = std::move(sigs);
    return id;
}

TypeId Program::stack_of(TypeId elem) {
    auto it = stacks_.find(elem);
    if (it != stacks_.end()) return it->second;
    TypeDescriptor d;
    d.kind = TypeKind::Class;
    d.elem = elem;
    d.name = "DS.Stack(" + tt.at(elem).name + ")";
    TypeId id = tt.add(std::move(d));
    stacks_[elem] = id;
    TypeId dflt = c_catch_unchecked >= 0 ? classes[c_catch_unchecked].type : kNoType;
    std::vector<MethodSignature> sigs = any_sigs;
    sigs.push_back(sig("getSize", {}, t_int, dflt));
    sigs.push_back(sig("getIter", {}, iter_of(elem), dflt));
    tt.at_mut(id).sigs = std::move(sigs);
    return id;
}

} // namespace green
