#ifndef GREEN_TYPES_HPP
#define GREEN_TYPES_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace green {

using TypeId = int;
inline constexpr TypeId kNoType = -1;

enum class TypeKind { Basic, Class, ClassObject, Array, NilT, Synth };

inline bool reference_kind(TypeKind k) { return k != TypeKind::Basic; }

// Parameter names are discarded; methods without a declared exception
// parameter carry the default one (the builder fills it in).
struct MethodSignature {
    std::string name;
    std::vector<TypeId> params;
    TypeId exception = kNoType;
    TypeId ret = kNoType;        // kNoType: procedure, no return value
    bool variadic = false;
};

struct TypeDescriptor {
    std::string name;
    TypeKind kind = TypeKind::Class;
    std::vector<MethodSignature> sigs;   // a set: order never matters
    TypeId elem = kNoType;               // Array: element type
    bool elem_expanded = false;          // array(@C)[...]: elements are value slots
};

// All types of one program, builtins included. Built once, then the
// relations are read-only queries.
class TypeTable {
public:
    TypeId add(TypeDescriptor d);
    const TypeDescriptor& at(TypeId id) const { return types_[id]; }
    TypeDescriptor& at_mut(TypeId id) { return types_[id]; }
    int size() const { return static_cast<int>(types_.size()); }
    TypeId lookup(const std::string& name) const;   // kNoType if absent

    // nominal escape hatches consulted by the relations
    TypeId any_array = kNoType;
    TypeId any_class_array = kNoType;

    bool type_equal(TypeId s, TypeId t) const;
    bool is_subtype(TypeId s, TypeId t) const;      // s is a subtype of t
    bool signature_equal(const MethodSignature& a, const MethodSignature& b) const;

    // comparison steps spent by the most recent query
    mutable long long steps = 0;

private:
    friend struct RelCtx;
    std::vector<TypeDescriptor> types_;
    std::map<std::string, TypeId> index_;
    mutable std::set<std::pair<TypeId, TypeId>> eq_true_, sub_true_;
};

} // namespace green

#endif
