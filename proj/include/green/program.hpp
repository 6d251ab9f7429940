#ifndef GREEN_PROGRAM_HPP
#define GREEN_PROGRAM_HPP

#include <map>
#include <string>
#include <vector>

#include "green/ast.hpp"
#include "green/types.hpp"
#include "green/value.hpp"

namespace green {

class Interp;
struct Program;

// Argument / expression conversions inserted by the checker.
enum class Conv : int { None = 0, Box = 1, Unbox = 2 };

// Native method implementation. `self` is the receiver (a class object for
// object-side methods); arguments arrive already converted per the checker.
// The method's own model rides along so one function can serve many
// registrations (payload in native_a/native_b, identity for MethodInfo).
struct MethodModel;
using NativeFn = Value (*)(Interp&, const MethodModel&, const Value& self,
                           std::vector<Value>& args);

struct MethodModel {
    std::string name;
    int id = -1;
    int owner = -1;               // class index
    bool on_object = false;       // class-object side
    Visibility vis = Visibility::Public;
    bool is_abstract = false;
    bool is_init = false;
    bool variadic = false;        // last param is "... array(T)[]"
    bool synthesized = false;     // compiler-added (new/cast/mirrors)
    std::vector<TypeId> params;
    std::vector<std::string> param_names;
    TypeId exc = kNoType;         // declared exception parameter type
    TypeId ret = kNoType;         // kNoType: no return value
    MethodAST* ast = nullptr;
    NativeFn native = nullptr;
    int native_a = -1;            // native payload (e.g. init method id for new)
    int native_b = -1;
    int decl_index = 0;           // order within the class body
    std::string sig_key;          // dispatch key: name + canonical param types
    int frame_size = 0;           // params + locals + assert vars (checker)
};

struct FieldModel {
    std::string name;
    TypeId type = kNoType;
    bool expanded = false;        // "@" variable
    TypeAST* ast = nullptr;
    Expr* init = nullptr;         // class-object variables may carry one
    int slot = -1;                // frame index (inherited slots first)
};

struct ConstModel {
    std::string name;
    TypeId type = kNoType;
    Value value;                  // folded basic value, when the initializer is one
    Expr* expr = nullptr;         // otherwise the initializer (string literals)
    bool is_public = true;
};

struct EnumItemModel {
    std::string name;
    int value = 0;
    bool is_public = true;
};

struct ClassModel {
    std::string name;
    int idx = -1;
    TypeId type = kNoType;        // instance type; kNoType for standalone objects
    TypeId obj_type = kNoType;    // class-object type
    int super = -1;               // class index; -1 for Any and shells
    bool is_abstract = false;
    bool is_basic = false;
    bool is_wrapper = false;
    bool is_shell = false;
    bool is_exception = false;    // declared subclass chain reaches Exception
    bool is_unchecked = false;    // ... reaches UncheckedException
    bool user = false;            // came from user sources (not prelude/builtin)
    bool subclassable = true;
    bool has_instance_side = true;
    Tag basic_tag = Tag::NilRef;  // basics: unboxed representation

    TypeId shell_base = kNoType;  // shells: type the shell attaches to
    int shell_base_class = -1;    //   class index when base names a class
    bool shell_on_object = false; //   base written as type(X)
    int shell_super = -1;         //   shell superclass (shell chain)

    ClassAST* ast = nullptr;
    ClassObjAST* obj_ast = nullptr;
    std::string file;

    std::vector<int> methods;     // own instance methods, decl order
    std::vector<int> obj_methods; // own object-side methods, decl order
    std::vector<FieldModel> fields;      // own instance variables
    std::vector<FieldModel> obj_fields;  // class-object variables
    std::vector<ConstModel> consts;
    std::vector<EnumItemModel> enums;
    int frame_size = 0;           // instance slots incl. inherited
    int obj_frame_size = 0;

    // Flattened dispatch: sig_key -> method id, most-derived first.
    std::map<std::string, int> vtab;
    std::map<std::string, int> obj_vtab;
    // Catch dispatch: throw methods in subclass-first declaration order.
    std::vector<std::pair<int, TypeId>> throw_scan;
    std::vector<std::pair<int, TypeId>> obj_throw_scan;
};

struct Program {
    TypeTable tt;
    std::vector<ClassModel> classes;
    std::map<std::string, int> class_index;
    std::vector<MethodModel> methods;

    // Owned syntax trees; MethodModel::ast and FieldModel::init point here.
    ProgramAST user_ast;
    ProgramAST prelude_ast;
    ProgramAST catch_ast;

    // --- well-known classes (indices) ---
    int c_any = -1, c_any_value = -1, c_any_class = -1, c_any_class_object = -1;
    int c_nil = -1, c_string = -1, c_dynstring = -1;
    int c_any_array = -1, c_any_class_array = -1;
    int c_char = -1, c_boolean = -1, c_byte = -1, c_integer = -1, c_long = -1,
        c_real = -1, c_double = -1;
    int c_wchar = -1, c_wboolean = -1, c_wbyte = -1, c_winteger = -1, c_wlong = -1,
        c_wreal = -1, c_wdouble = -1;
    int c_exception = -1, c_unchecked = -1, c_catch = -1, c_catch_unchecked = -1,
        c_hcatch_unchecked = -1, c_function = -1;
    int c_in = -1, c_out = -1, c_outerror = -1, c_memory = -1, c_runtime = -1, c_meta = -1;
    int c_class_info = -1, c_method_info = -1, c_class_method_info = -1,
        c_object_method_info = -1, c_class_init_method_info = -1,
        c_object_init_method_info = -1, c_instance_variable_info = -1,
        c_class_ivar_info = -1, c_object_ivar_info = -1,
        c_any_object_info = -1, c_object_info = -1, c_class_object_info = -1,
        c_method_call_info = -1, c_parameter_info = -1, c_constant_info = -1,
        c_enum_info = -1, c_live_local_variable_info = -1, c_live_parameter_info = -1,
        c_value_class_info = -1, c_abstract_class_info = -1, c_array_class_info = -1,
        c_method_body_info = -1, c_iter = -1, c_stack = -1;

    // --- well-known types ---
    TypeId t_bool = kNoType, t_char = kNoType, t_byte = kNoType, t_int = kNoType,
           t_long = kNoType, t_real = kNoType, t_double = kNoType, t_nil = kNoType;

    int find_class(const std::string& name) const {
        auto it = class_index.find(name);
        return it == class_index.end() ? -1 : it->second;
    }

    // Class whose instance (resp. class-object) type is t; -1 when t is no
    // such type. Exact ids: declared class types are never re-derived.
    int class_by_type(TypeId t) const {
        if (t == kNoType) return -1;
        for (int i = 0; i < (int)classes.size(); ++i)
            if (classes[i].type == t) return i;
        return -1;
    }
    int class_by_obj_type(TypeId t) const {
        if (t == kNoType) return -1;
        for (int i = 0; i < (int)classes.size(); ++i)
            if (classes[i].obj_type == t) return i;
        return -1;
    }

    // Smallest structurally-equal TypeId; dispatch keys and overload identity
    // are built on this. Stable because descriptors are frozen before any
    // canon query is issued.
    TypeId canon(TypeId t);

    // Array type (elem, dims), created on first use. elem_expanded builds the
    // assignment-less descriptor of array(@C)[...].
    TypeId array_of(TypeId elem, int dims, bool elem_expanded = false);
    const std::map<std::tuple<TypeId, int, bool>, TypeId>& array_types() const { return arrays_; }

    // DS.Iter(T) / DS.Stack(T), created on first use.
    TypeId iter_of(TypeId elem);
    TypeId stack_of(TypeId elem);

    std::string sig_key_of(const std::string& name, const std::vector<TypeId>& params,
                           bool variadic);

    bool class_subclass_of(int sub, int sup) const; // declared chain walk
    Value zero_value(TypeId t) const;

    // true when `t` is one of the basic TypeIds
    bool is_basic_type(TypeId t) const {
        return t == t_bool || t == t_char || t == t_byte || t == t_int || t == t_long ||
               t == t_real || t == t_double;
    }
    int wrapper_of(TypeId basic) const;   // class index of Char..Double
    TypeId basic_of_wrapper(int cls) const; // kNoType when cls is no wrapper

    // The Any interface every reference type carries (stashed by stdlib).
    std::vector<MethodSignature> any_sigs;

  private:
    std::map<TypeId, TypeId> canon_;
    std::map<std::tuple<TypeId, int, bool>, TypeId> arrays_;
    std::map<TypeId, TypeId> iters_;
    std::map<TypeId, TypeId> stacks_;
};

// stdlib.cpp — composes the built-in world.
//   builtin_declare: native-backed classes (Any, basics, String, arrays,
//     I/O, reflection...) declared straight into the Program (ids only).
//   builtin_define: their signatures and native methods (runs after every
//     parsed class has an id, since signatures mention prelude types).
//   prelude_source: Green source for everything expressible in the language
//     (Catch, the exception library, wrappers, Function...).
//   synthesized_catch_source: CatchE/HCatchE for every declared exception
//     subclass plus CatchUncheckedException/HCatchUncheckedException and the
//     CatchAll family, whose throw sets depend on the whole class list.
//   synthesize_class_object: compiler-added class-object methods (new, cast,
//     castObject, getAssociateClassInfo, getInitMethod, the Any mirrors).
void builtin_declare(Program& p);
void builtin_define(Program& p);
void synthesize_class_object(Program& p, int cls);
std::string prelude_source();
std::string synthesized_catch_source(const ProgramAST& prelude, const ProgramAST& user);

// builder.cpp — turns parsed classes into the model. Takes ownership of the
// user syntax tree; parses and owns the prelude. Returns false when a
// structural diagnostic (unknown superclass, duplicate class, bad shell
// base...) was emitted.
bool build_program(Program& p, ProgramAST user, std::vector<Diagnostic>& diags);

} // namespace green

#endif
