#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "green/types.hpp"

#include <map>
#include <random>
#include <tuple>
#include <vector>

using namespace green;

// ---------------------------------------------------------------------------
// Oracle: equality by bounded structural unrolling, written against the
// definition alone (a type is the set of its method signatures; basic types
// compare by identity; arrays by element; nil only to nil). On a table of n
// types the depth-k relations form a shrinking chain of equivalences that
// stabilizes before depth n, so agreement of all unrollings to depth n+1
// decides equality. Memoized on (s,t,depth); independent of the production
// algorithm, which reasons with an assumed-pair set instead.
// ---------------------------------------------------------------------------

namespace {

struct Oracle {
    const TypeTable& tt;
    std::map<std::tuple<TypeId, TypeId, int>, bool> memo = {};

    bool comp_eq(TypeId a, TypeId b, int depth) {
        if (a == kNoType || b == kNoType) return a == b;
        return eq(a, b, depth);
    }

    bool sig_eq(const MethodSignature& x, const MethodSignature& y, int depth) {
        if (x.name != y.name || x.params.size() != y.params.size() ||
            x.variadic != y.variadic || (x.ret == kNoType) != (y.ret == kNoType))
            return false;
        for (size_t i = 0; i < x.params.size(); i++)
            if (!comp_eq(x.params[i], y.params[i], depth)) return false;
        return comp_eq(x.ret, y.ret, depth) && comp_eq(x.exception, y.exception, depth);
    }

    // every signature of S has an equal one in T
    bool included(const TypeDescriptor& S, const TypeDescriptor& T, int depth) {
        for (auto& a : S.sigs) {
            bool found = false;
            for (auto& b : T.sigs)
                if (sig_eq(a, b, depth)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }

    bool eq(TypeId s, TypeId t, int depth) {
        if (s == t) return true;
        if (depth == 0) return true;   // out of fuel: indistinguishable so far
        auto key = std::make_tuple(s, t, depth);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const TypeDescriptor& S = tt.at(s);
        const TypeDescriptor& T = tt.at(t);
        bool r;
        if (S.kind == TypeKind::Basic || T.kind == TypeKind::Basic)
            r = false;   // distinct ids
        else if ((S.kind == TypeKind::NilT) != (T.kind == TypeKind::NilT))
            r = false;
        else if (S.kind == TypeKind::NilT)
            r = true;
        else if ((S.kind == TypeKind::Array) != (T.kind == TypeKind::Array))
            r = false;
        else if (S.kind == TypeKind::Array)
            r = eq(S.elem, T.elem, depth - 1);
        else
            r = included(S, T, depth - 1) && included(T, S, depth - 1);
        memo[key] = r;
        return r;
    }

    bool equal(TypeId s, TypeId t) { return eq(s, t, tt.size() + 1); }

    // subtype: every signature of t has an equal signature in s, plus the
    // nil / basic / array rules
    bool subtype(TypeId s, TypeId t) {
        if (s == t) return true;
        const TypeDescriptor& S = tt.at(s);
        const TypeDescriptor& T = tt.at(t);
        if (S.kind == TypeKind::NilT) return T.kind != TypeKind::Basic;
        if (S.kind == TypeKind::Basic || T.kind == TypeKind::Basic) return false;
        if (T.kind == TypeKind::NilT) return false;
        if (T.kind == TypeKind::Array) {
            if (S.kind != TypeKind::Array) return false;
            return equal(s, t);
        }
        if (S.kind == TypeKind::Array) {
            if (t == tt.any_array) return true;
            if (t == tt.any_class_array) return reference_kind(tt.at(S.elem).kind);
        }
        int depth = tt.size() + 1;
        return included(T, S, depth);
    }
};

// ---------------------------------------------------------------------------
// Random table generator: up to 12 types, forward references and cycles
// allowed, occasional declared inheritance so subclass pairs exist.
// ---------------------------------------------------------------------------

struct GenTable {
    TypeTable tt;
    std::vector<std::pair<TypeId, TypeId>> subclass_pairs;   // (child, parent)
};

GenTable gen_table(std::mt19937& rng) {
    GenTable g;
    auto pick = [&](int n) { return static_cast<int>(rng() % n); };
    int n_basic = 2 + pick(3);
    const char* basics[] = {"integer", "boolean", "real", "char"};
    for (int i = 0; i < n_basic; i++)
        g.tt.add({basics[i], TypeKind::Basic, {}, kNoType});
    int n_total = n_basic + 1 + pick(12 - n_basic);
    std::vector<TypeId> class_ids;
    for (int i = n_basic; i < n_total; i++) {
        TypeDescriptor d;
        d.name = "T" + std::to_string(i);
        int roll = pick(100);
        if (roll < 70) d.kind = TypeKind::Class;
        else if (roll < 85) d.kind = TypeKind::Array;
        else if (roll < 95) d.kind = TypeKind::ClassObject;
        else d.kind = TypeKind::NilT;
        TypeId id = g.tt.add(std::move(d));
        if (g.tt.at(id).kind == TypeKind::Class ||
            g.tt.at(id).kind == TypeKind::ClassObject)
            class_ids.push_back(id);
    }
    const char* names[] = {"m", "f", "get", "set"};
    TypeId exc_default = class_ids.empty() ? kNoType : class_ids[0];
    for (int i = n_basic; i < n_total; i++) {
        TypeDescriptor& d = g.tt.at_mut(i);
        if (d.kind == TypeKind::Array) {
            d.elem = pick(n_total);
            continue;
        }
        if (d.kind == TypeKind::NilT) continue;
        // maybe inherit from an earlier class
        if (!class_ids.empty() && pick(100) < 40) {
            TypeId parent = class_ids[pick(static_cast<int>(class_ids.size()))];
            if (parent < i) {
                d.sigs = g.tt.at(parent).sigs;
                g.subclass_pairs.push_back({i, parent});
            }
        }
        int extra = pick(4);
        for (int k = 0; k < extra; k++) {
            MethodSignature s;
            s.name = names[pick(4)];
            int np = pick(3);
            for (int p = 0; p < np; p++) s.params.push_back(pick(n_total));
            if (pick(100) < 60) s.ret = pick(n_total);
            int er = pick(100);
            if (er < 70) s.exception = exc_default;
            else if (er < 90) s.exception = pick(n_total);
            s.variadic = pick(100) < 8 && !s.params.empty();
            d.sigs.push_back(std::move(s));
        }
    }
    return g;
}

// helper for hand-built tables
struct TB {
    TypeTable tt;
    TypeId cue;
    TB() {
        cue = tt.add({"CUE", TypeKind::Class, {}, kNoType});
    }
    TypeId basic(const std::string& n) {
        return tt.add({n, TypeKind::Basic, {}, kNoType});
    }
    TypeId cls(const std::string& n, TypeKind k = TypeKind::Class) {
        return tt.add({n, k, {}, kNoType});
    }
    TypeId arr(const std::string& n, TypeId elem) {
        return tt.add({n, TypeKind::Array, {}, elem});
    }
    void sig(TypeId c, const std::string& name, std::vector<TypeId> params,
             TypeId ret = kNoType) {
        g_sig(c, name, std::move(params), ret, cue);
    }
    void g_sig(TypeId c, const std::string& name, std::vector<TypeId> params,
               TypeId ret, TypeId exc) {
        MethodSignature s;
        s.name = name;
        s.params = std::move(params);
        s.ret = ret;
        s.exception = exc;
        tt.at_mut(c).sigs.push_back(std::move(s));
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Pinned examples
// ---------------------------------------------------------------------------

TEST_CASE("store: equality is signature-set equality") {
    TB b;
    TypeId integer = b.basic("integer");
    TypeId store = b.cls("Store");
    b.sig(store, "set", {integer});
    b.sig(store, "get", {}, integer);
    TypeId store2 = b.cls("Store2");
    b.sig(store2, "get", {}, integer);   // different order, same set
    b.sig(store2, "set", {integer});
    TypeId nogept = b.cls("StoreNoGet");
    b.sig(nogept, "set", {integer});

    CHECK(b.tt.type_equal(store, store));
    CHECK(b.tt.type_equal(store, store2));
    CHECK(b.tt.type_equal(store2, store));
    CHECK_FALSE(b.tt.type_equal(store, nogept));
    // more methods: subtype one way only
    CHECK(b.tt.is_subtype(store, nogept));
    CHECK_FALSE(b.tt.is_subtype(nogept, store));
}

TEST_CASE("self-referential classes compare equal") {
    TB b;
    TypeId a = b.cls("A");
    TypeId c = b.cls("B");
    b.sig(a, "m", {a}, a);
    b.sig(c, "m", {c}, c);
    CHECK(b.tt.type_equal(a, c));
    CHECK(b.tt.is_subtype(a, c));
    CHECK(b.tt.is_subtype(c, a));

    Oracle o{b.tt};
    CHECK(o.equal(a, c));
}

TEST_CASE("mutually recursive pairs") {
    // A.m : B, B.m : A  vs  C.m : D, D.m : C — all four equal coinductively
    TB b;
    TypeId a = b.cls("A"), bb = b.cls("B"), c = b.cls("C"), d = b.cls("D");
    b.sig(a, "m", {}, bb);
    b.sig(bb, "m", {}, a);
    b.sig(c, "m", {}, d);
    b.sig(d, "m", {}, c);
    CHECK(b.tt.type_equal(a, c));
    CHECK(b.tt.type_equal(a, d));
    CHECK(b.tt.type_equal(a, bb));
    Oracle o{b.tt};
    CHECK(o.equal(a, c));
    CHECK(o.equal(a, d));

    // break the cycle in one spot
    TypeId e = b.cls("E"), f = b.cls("F");
    b.sig(e, "m", {}, f);
    b.sig(f, "n", {}, e);   // different name
    CHECK_FALSE(b.tt.type_equal(a, e));
    Oracle o2{b.tt};
    CHECK_FALSE(o2.equal(a, e));
}

TEST_CASE("basic types compare by identity") {
    TB b;
    TypeId i = b.basic("integer");
    TypeId l = b.basic("long");
    CHECK(b.tt.type_equal(i, i));
    CHECK_FALSE(b.tt.type_equal(i, l));
    CHECK_FALSE(b.tt.is_subtype(i, l));
    CHECK(b.tt.is_subtype(i, i));
    // basics never relate structurally to classes, even empty ones
    TypeId c = b.cls("Empty");
    CHECK_FALSE(b.tt.is_subtype(i, c));
    CHECK_FALSE(b.tt.is_subtype(c, i));
}

TEST_CASE("nil is a subtype of every reference type") {
    TB b;
    TypeId nil = b.cls("Nil", TypeKind::NilT);
    TypeId fig = b.cls("Figure");
    b.sig(fig, "draw", {});
    TypeId integer = b.basic("integer");
    TypeId arr = b.arr("array(Figure)[]", fig);
    CHECK(b.tt.is_subtype(nil, fig));
    CHECK(b.tt.is_subtype(nil, arr));
    CHECK(b.tt.is_subtype(nil, nil));
    CHECK_FALSE(b.tt.is_subtype(nil, integer));
    CHECK_FALSE(b.tt.is_subtype(fig, nil));
    CHECK_FALSE(b.tt.type_equal(nil, fig));
}

TEST_CASE("arrays: invariant elements, no covariance") {
    TB b;
    TypeId fig = b.cls("Figure");
    b.sig(fig, "draw", {});
    TypeId circle = b.cls("Circle");
    b.sig(circle, "draw", {});
    b.sig(circle, "getRadius", {}, b.tt.lookup("CUE"));
    REQUIRE(b.tt.is_subtype(circle, fig));

    TypeId afig = b.arr("array(Figure)[]", fig);
    TypeId acirc = b.arr("array(Circle)[]", circle);
    CHECK_FALSE(b.tt.is_subtype(acirc, afig));
    CHECK_FALSE(b.tt.is_subtype(afig, acirc));
    CHECK(b.tt.is_subtype(acirc, acirc));

    // equal element types make equal array types
    TypeId fig2 = b.cls("Figure2");
    b.sig(fig2, "draw", {});
    TypeId afig2 = b.arr("array(Figure2)[]", fig2);
    CHECK(b.tt.type_equal(afig, afig2));
    CHECK(b.tt.is_subtype(afig, afig2));

    // arrays never equal a class, no matter its signatures
    CHECK_FALSE(b.tt.type_equal(afig, fig));
}

TEST_CASE("arrays are subtypes of the designated roots") {
    TB b;
    TypeId integer = b.basic("integer");
    TypeId fig = b.cls("Figure");
    TypeId aa = b.cls("AnyArray");
    b.sig(aa, "getNumberOfDimensions", {}, integer);
    TypeId aca = b.cls("AnyClassArray");
    b.tt.any_array = aa;
    b.tt.any_class_array = aca;

    TypeId ai = b.arr("array(integer)[]", integer);
    TypeId af = b.arr("array(Figure)[]", fig);
    TypeId aaf = b.arr("array(array(Figure)[])[]", af);
    CHECK(b.tt.is_subtype(ai, aa));
    CHECK(b.tt.is_subtype(af, aa));
    CHECK(b.tt.is_subtype(af, aca));
    CHECK(b.tt.is_subtype(aaf, aca));       // element is a reference type
    CHECK_FALSE(b.tt.is_subtype(ai, aca));  // basic elements are not
}

TEST_CASE("structural identity without inheritance is mutual subtyping") {
    TB b;
    TypeId i = b.basic("integer");
    TypeId p1 = b.cls("Pixel");
    b.sig(p1, "getX", {}, i);
    b.sig(p1, "getY", {}, i);
    TypeId p2 = b.cls("Coordinate");
    b.sig(p2, "getY", {}, i);
    b.sig(p2, "getX", {}, i);
    CHECK(b.tt.is_subtype(p1, p2));
    CHECK(b.tt.is_subtype(p2, p1));
    CHECK(b.tt.type_equal(p1, p2));
}

TEST_CASE("signature equality") {
    TB b;
    TypeId i = b.basic("integer");
    TypeId other = b.cls("OtherCatch");
    b.sig(other, "rethrow", {i});   // structurally distinct from CUE
    MethodSignature a{"get", {i}, b.cue, i, false};
    MethodSignature same{"get", {i}, b.cue, i, false};
    CHECK(b.tt.signature_equal(a, same));

    MethodSignature exc{"get", {i}, other, i, false};
    CHECK_FALSE(b.tt.signature_equal(a, exc));   // exception type matters

    MethodSignature noret{"get", {i}, b.cue, kNoType, false};
    CHECK_FALSE(b.tt.signature_equal(a, noret));
    CHECK(b.tt.signature_equal(noret, noret));

    MethodSignature vari{"get", {i}, b.cue, i, true};
    CHECK_FALSE(b.tt.signature_equal(a, vari));

    MethodSignature diffname{"got", {i}, b.cue, i, false};
    CHECK_FALSE(b.tt.signature_equal(a, diffname));
}

TEST_CASE("class object types are plain structural types") {
    TB b;
    TypeId i = b.basic("integer");
    TypeId w = b.cls("Window");
    TypeId wo = b.cls("WindowObject", TypeKind::ClassObject);
    b.sig(wo, "new", {}, w);
    b.sig(wo, "getDefaultColor", {}, i);
    TypeId syn = b.cls("Type$Window", TypeKind::Synth);
    b.sig(syn, "new", {}, w);
    b.sig(syn, "getDefaultColor", {}, i);
    CHECK(b.tt.type_equal(wo, syn));
    CHECK(b.tt.is_subtype(wo, syn));
}

// ---------------------------------------------------------------------------
// Quantified properties over generated tables
// ---------------------------------------------------------------------------

TEST_CASE("relations on 1000 random tables") {
    std::mt19937 rng(420311);
    int oracle_checked = 0;
    for (int iter = 0; iter < 1000; iter++) {
        GenTable g = gen_table(rng);
        TypeTable& tt = g.tt;
        int n = tt.size();
        auto pick = [&] { return static_cast<TypeId>(rng() % n); };

        // reflexivity, termination
        for (TypeId s = 0; s < n; s++) {
            REQUIRE(tt.type_equal(s, s));
            REQUIRE(tt.steps < 1000000);
            REQUIRE(tt.is_subtype(s, s));
            REQUIRE(tt.steps < 1000000);
        }

        // symmetry of equality; equality implies mutual subtyping
        for (int k = 0; k < 40; k++) {
            TypeId s = pick(), t = pick();
            bool st = tt.type_equal(s, t);
            REQUIRE(tt.steps < 1000000);
            bool ts = tt.type_equal(t, s);
            CAPTURE(iter);
            CAPTURE(s);
            CAPTURE(t);
            REQUIRE(st == ts);
            if (st) {
                REQUIRE(tt.is_subtype(s, t));
                REQUIRE(tt.is_subtype(t, s));
            }
        }

        // transitivity of both relations on sampled triples
        for (int k = 0; k < 60; k++) {
            TypeId s = pick(), t = pick(), u = pick();
            CAPTURE(iter);
            CAPTURE(s);
            CAPTURE(t);
            CAPTURE(u);
            if (tt.type_equal(s, t) && tt.type_equal(t, u))
                REQUIRE(tt.type_equal(s, u));
            if (tt.is_subtype(s, t) && tt.is_subtype(t, u))
                REQUIRE(tt.is_subtype(s, u));
        }

        // declared subclasses are subtypes
        for (auto [child, parent] : g.subclass_pairs) {
            CAPTURE(iter);
            REQUIRE(tt.is_subtype(child, parent));
        }

        // oracle agreement on sampled pairs
        if (oracle_checked < 200) {
            Oracle o{tt};
            for (int k = 0; k < 3 && oracle_checked < 200; k++) {
                TypeId s = pick(), t = pick();
                CAPTURE(iter);
                CAPTURE(s);
                CAPTURE(t);
                REQUIRE(tt.type_equal(s, t) == o.equal(s, t));
                REQUIRE(tt.is_subtype(s, t) == o.subtype(s, t));
                oracle_checked++;
            }
        }
    }
    CHECK(oracle_checked == 200);
}

TEST_CASE("weakening the target keeps subtyping") {
    std::mt19937 rng(7711);
    int checked = 0;
    for (int iter = 0; iter < 300 && checked < 120; iter++) {
        GenTable g = gen_table(rng);
        TypeTable& tt = g.tt;
        int n = tt.size();
        for (int k = 0; k < 25; k++) {
            TypeId s = static_cast<TypeId>(rng() % n);
            TypeId t = static_cast<TypeId>(rng() % n);
            const TypeDescriptor& T = tt.at(t);
            if (T.kind == TypeKind::Array || T.kind == TypeKind::NilT ||
                T.kind == TypeKind::Basic || T.sigs.empty())
                continue;
            if (!tt.is_subtype(s, t)) continue;
            // a copy of t minus one signature is a weaker requirement
            TypeDescriptor weaker = T;
            weaker.name += "$weak";
            weaker.sigs.erase(weaker.sigs.begin() +
                              static_cast<long>(rng() % weaker.sigs.size()));
            TypeId w = tt.add(std::move(weaker));
            CAPTURE(iter);
            CAPTURE(s);
            CAPTURE(t);
            REQUIRE(tt.is_subtype(s, w));
            checked++;
        }
    }
    CHECK(checked >= 120);
}
