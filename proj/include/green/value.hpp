#ifndef GREEN_VALUE_HPP
#define GREEN_VALUE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "green/types.hpp"

namespace green {

struct Obj;
using ObjPtr = std::shared_ptr<Obj>;

// Runtime value. Basic values are unboxed; everything else is a reference.
// Poison marks a for-control variable after its loop ended (read = error
// under --strict-loop-var).
enum class Tag : uint8_t { NilRef, Bool, Char, Byte, Int, Long, Real, Double, Ref, Poison };

struct Value {
    Tag tag = Tag::NilRef;
    union {
        bool b;
        unsigned char c;
        uint8_t by;
        int32_t i;
        int64_t l;
        float r;
        double d;
    };
    ObjPtr ref;

    Value() : l(0) {}

    static Value nil() { return Value(); }
    static Value of_bool(bool v) { Value x; x.tag = Tag::Bool; x.b = v; return x; }
    static Value of_char(unsigned char v) { Value x; x.tag = Tag::Char; x.c = v; return x; }
    static Value of_byte(uint8_t v) { Value x; x.tag = Tag::Byte; x.by = v; return x; }
    static Value of_int(int32_t v) { Value x; x.tag = Tag::Int; x.i = v; return x; }
    static Value of_long(int64_t v) { Value x; x.tag = Tag::Long; x.l = v; return x; }
    static Value of_real(float v) { Value x; x.tag = Tag::Real; x.r = v; return x; }
    static Value of_double(double v) { Value x; x.tag = Tag::Double; x.d = v; return x; }
    static Value of_ref(ObjPtr o) { Value x; x.tag = Tag::Ref; x.ref = std::move(o); return x; }
    static Value poison() { Value x; x.tag = Tag::Poison; return x; }

    bool is_nil() const { return tag == Tag::NilRef; }
    bool is_ref() const { return tag == Tag::Ref; }
    bool is_basic() const { return tag != Tag::NilRef && tag != Tag::Ref && tag != Tag::Poison; }
};

// Array payload. Multi-dimensional arrays are rows of rows: the top level
// holds Refs to (k-1)-dimensional arrays. The iteration cursor walks leaf
// elements in row-major order.
struct ArrayRep {
    TypeId type = kNoType;       // the array type itself
    TypeId elem = kNoType;       // element type
    int dims = 1;                // declared dimension count at this level
    std::vector<int64_t> sizes;  // filled by init; sizes.size() == dims
    std::vector<Value> elems;    // dims==1: leaves; otherwise Refs to rows
    bool allocated = false;

    // reset/more/next state
    int64_t cursor = 0;
    bool ascending = true;

    int64_t total() const {
        int64_t n = 1;
        for (int64_t s : sizes) n *= s;
        return allocated ? n : 0;
    }
};

// Every heap entity: instances, class objects, strings, arrays, wrappers,
// reflection mirrors, Iter/Stack. One struct keeps the interpreter simple;
// unused payload fields stay empty.
struct Obj {
    int cls = -1;                  // index into Program::classes
    bool is_class_object = false;
    // precise runtime type when the class alone is too coarse (Iter/Stack
    // share one ClassModel across every element type)
    TypeId type_override = kNoType;
    std::vector<Value> fields;

    std::string str;               // String / DynString payload
    std::unique_ptr<ArrayRep> arr; // arrays

    std::vector<ObjPtr> shells;    // attached shells, back = top

    // Reflection payload (mirrors, Iter/Stack, MethodCallInfo).
    int m_class = -1;              // subject class index
    int m_method = -1;             // subject method id
    int m_member = -1;             // variable / constant / enum index
    Value m_obj;                   // bound object (ObjectMethodInfo, AnyObjectInfo)
    std::vector<Value> items;      // Iter / Stack contents
    size_t iter_pos = 0;
};

inline Value zero_of(TypeKind kind, TypeId t, TypeId t_bool, TypeId t_char, TypeId t_byte,
                     TypeId t_int, TypeId t_long, TypeId t_real, TypeId t_double) {
    if (kind != TypeKind::Basic) return Value::nil();
    if (t == t_bool) return Value::of_bool(false);
    if (t == t_char) return Value::of_char(0);
    if (t == t_byte) return Value::of_byte(0);
    if (t == t_int) return Value::of_int(0);
    if (t == t_long) return Value::of_long(0);
    if (t == t_real) return Value::of_real(0.0f);
    if (t == t_double) return Value::of_double(0.0);
    return Value::nil();
}

} // namespace green

#endif
