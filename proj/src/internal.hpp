#pragma once
// Shared plumbing for the built-in world. stdlib.cpp owns the core classes,
// reflect.cpp the *Info mirrors, meta.cpp the Meta object; builder.cpp calls
// the declare/define pairs at the right build phases. Not part of the public
// headers.

#include "green/interp.hpp"
#include "green/program.hpp"

namespace green {

struct BuiltinClass {
    std::string name;
    std::string super;          // resolved immediately; "" = AnyClass, "-" = root
    TypeKind kind = TypeKind::Class;
    bool is_abstract = false;
    bool instance_side = true;  // false: standalone object (Out, Runtime, ...)
    bool subclassable = false;  // almost no builtin is
    bool is_basic = false;
    Tag basic_tag = Tag::NilRef;
    bool is_wrapper = false;
};

int declare_class(Program& p, const BuiltinClass& bc);

// Registers a native method on `cls` (instance or object side). `exc` of
// kNoType means the default exception parameter; the builder patches every
// remaining kNoType slot to type(CatchUncheckedException) once that class
// exists. Returns the method id.
int add_native(Program& p, int cls, bool on_object, Visibility vis,
               const std::string& name,
               std::vector<TypeId> params, std::vector<std::string> pnames,
               TypeId ret, TypeId exc, bool variadic, NativeFn fn,
               int native_a = -1, int native_b = -1);

void reflect_declare(Program& p);
void reflect_define(Program& p);
void meta_declare(Program& p);
void meta_define(Program& p);

// Written type -> TypeId against the declared class set (builder.cpp). Used
// by the builder for signatures/fields and by the checker for local
// declarations. kNoType on failure, with a diagnostic appended.
TypeId resolve_type_ast(Program& p, const TypeAST* t, const std::string& file,
                        std::vector<Diagnostic>& diags);

// Generic object machinery shared across modules.
Value nat_obj_tostring(Interp&, const MethodModel&, const Value&, std::vector<Value>&);
Value nat_hard_uncaught(Interp&, const MethodModel&, const Value&, std::vector<Value>&);

// Basic-value rendering (toString format, also used by object String casts).
std::string format_basic(const Value& v);

// ClassInfo mirror for an array type (reflect.cpp; the interpreter routes
// array getClassInfo sends here).
Value array_class_info(Interp& I, TypeId array_type);

// Deep/shallow clone & compare cores (also used by the Any delegation
// methods and the class-object mirrors).
Value clone_value(Interp& I, const Value& v, bool deep);
bool value_shallow_equal(Interp& I, const Value& a, const Value& b);
bool value_deep_equal(Interp& I, const Value& a, const Value& b);
bool value_shallow_copy(Interp& I, const Value& dst, const Value& src);

}  // namespace green
