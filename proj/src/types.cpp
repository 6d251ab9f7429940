#include "green/types.hpp"

namespace green {

TypeId TypeTable::add(TypeDescriptor d) {
    TypeId id = static_cast<TypeId>(types_.size());
    index_.emplace(d.name, id);
    types_.push_back(std::move(d));
    return id;
}

TypeId TypeTable::lookup(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? kNoType : it->second;
}

// Equality works coinductively: a pair under comparison is assumed equal
// while its signatures are checked, so cycles succeed. Assumptions made on
// a branch that fails are rolled back before the next overload candidate is
// tried; assumptions surviving a successful top-level query are genuinely
// equal pairs and get promoted to the cache.
struct RelCtx {
    const TypeTable& tt;
    std::set<std::pair<TypeId, TypeId>> ig;
    std::vector<std::pair<TypeId, TypeId>> trail;

    explicit RelCtx(const TypeTable& t) : tt(t) {}

    void rollback(size_t mark) {
        while (trail.size() > mark) {
            ig.erase(trail.back());
            trail.pop_back();
        }
    }

    bool comp_eq(TypeId a, TypeId b) {
        if (a == kNoType || b == kNoType) return a == b;
        return eq(a, b);
    }

    bool sig_heads_match(const MethodSignature& a, const MethodSignature& b) {
        return a.name == b.name && a.params.size() == b.params.size() &&
               a.variadic == b.variadic && (a.ret == kNoType) == (b.ret == kNoType);
    }

    bool sig_eq(const MethodSignature& a, const MethodSignature& b) {
        if (!sig_heads_match(a, b)) return false;
        for (size_t i = 0; i < a.params.size(); i++)
            if (!comp_eq(a.params[i], b.params[i])) return false;
        return comp_eq(a.ret, b.ret) && comp_eq(a.exception, b.exception);
    }

    // every signature of S has an equal one in T
    bool included(const TypeDescriptor& S, const TypeDescriptor& T) {
        for (auto& a : S.sigs) {
            bool found = false;
            for (auto& b : T.sigs) {
                size_t mark = trail.size();
                if (sig_eq(a, b)) {
                    found = true;
                    break;
                }
                rollback(mark);
            }
            if (!found) return false;
        }
        return true;
    }

    bool eq(TypeId s, TypeId t) {
        tt.steps++;
        if (s == t) return true;
        if (tt.eq_true_.count({s, t})) return true;
        if (ig.count({s, t})) return true;
        const TypeDescriptor& S = tt.at(s);
        const TypeDescriptor& T = tt.at(t);
        if (S.kind == TypeKind::Basic || T.kind == TypeKind::Basic) return false;
        if ((S.kind == TypeKind::NilT) != (T.kind == TypeKind::NilT)) return false;
        if ((S.kind == TypeKind::Array) != (T.kind == TypeKind::Array)) return false;
        size_t mark = trail.size();
        ig.insert({s, t});
        trail.push_back({s, t});
        bool ok;
        if (S.kind == TypeKind::NilT) ok = true;
        else if (S.kind == TypeKind::Array) ok = eq(S.elem, T.elem);
        else ok = included(S, T) && included(T, S);
        if (!ok) rollback(mark);
        return ok;
    }

    // discharge assumptions of a successful query into the cache, both ways
    void promote() const {
        for (auto& p : trail) {
            tt.eq_true_.insert(p);
            tt.eq_true_.insert({p.second, p.first});
        }
    }
};

bool TypeTable::type_equal(TypeId s, TypeId t) const {
    steps = 0;
    RelCtx c(*this);
    bool ok = c.eq(s, t);
    if (ok) c.promote();
    return ok;
}

bool TypeTable::signature_equal(const MethodSignature& a,
                                const MethodSignature& b) const {
    steps = 0;
    RelCtx c(*this);
    bool ok = c.sig_eq(a, b);
    if (ok) c.promote();
    return ok;
}

bool TypeTable::is_subtype(TypeId s, TypeId t) const {
    steps = 0;
    if (s == t) return true;
    if (sub_true_.count({s, t})) return true;
    const TypeDescriptor& S = at(s);
    const TypeDescriptor& T = at(t);
    bool ok;
    if (S.kind == TypeKind::NilT) {
        ok = T.kind != TypeKind::Basic;
    } else if (S.kind == TypeKind::Basic || T.kind == TypeKind::Basic ||
               T.kind == TypeKind::NilT) {
        ok = false;
    } else if (T.kind == TypeKind::Array) {
        // arrays relate to arrays by equality alone: elements are invariant
        if (S.kind != TypeKind::Array) return false;
        RelCtx c(*this);
        ok = c.eq(s, t);
        if (ok) c.promote();
    } else if (S.kind == TypeKind::Array && t == any_array) {
        ok = true;
    } else if (S.kind == TypeKind::Array && t == any_class_array) {
        ok = reference_kind(at(S.elem).kind);
    } else {
        // structural: every signature required by t is present in s
        RelCtx c(*this);
        ok = c.included(T, S);
        if (ok) c.promote();
    }
    if (ok) sub_true_.insert({s, t});
    return ok;
}

} // namespace green
