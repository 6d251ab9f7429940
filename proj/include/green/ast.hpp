#ifndef GREEN_AST_HPP
#define GREEN_AST_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "green/token.hpp"

namespace green {

struct Expr;
struct Stmt;
struct TypeAST;
using ExprP = std::unique_ptr<Expr>;
using StmtP = std::unique_ptr<Stmt>;
using TypeP = std::unique_ptr<TypeAST>;

// ---------------------------------------------------------------- types

struct TypeAST {
    enum Kind { Basic, Named, TypeOf, Array } kind = Named;
    Span span;
    std::string name;              // Basic: "integer"...  Named: class name  TypeOf: type(name)
    std::vector<TypeP> args;       // Named with parameter list: Id(T1, T2)  (rejected by checker)
    TypeP elem;                    // Array element when written as a type
    ExprP elem_expr;               // Array element when only an expression fits (runtime class object)
    std::vector<long long> dims;   // one entry per "[..]"; -1 when the bound is absent
    std::vector<std::string> dim_names;  // constant name used as a bound, "" otherwise
    bool expanded = false;         // "@" prefix
};

// ---------------------------------------------------------------- expressions

enum class ExprKind {
    IntLit, LongLit, ByteLit, RealLit, DoubleLit, CharLit, StrLit, BoolLit, NilLit,
    Ident,        // name
    SelfX,
    ResultX,      // "result" inside an after-assertion
    ExceptionX,   // the implicit exception parameter (receiver position only)
    BasicTypeX,   // a basic type used as a value: the class object (integer, char, ...)
    ArrayTypeX,   // an array type used as a value: its class object, e.g. array(T)[]
    Unary,        // op a
    Binary,       // a op b
    Assign,       // a = b
    Index,        // a[b]
    Member,       // a.name        (no argument list)
    Call,         // recv.name(args) — recv may be empty (self-send), super, exception
    ArrayInit,    // #(e1, ..., en)
};

// Resolution of an identifier, filled by the checker.
enum class RefKind {
    Unresolved, Local, Param, Field, ClassObject, Constant, EnumConstant,
};

struct Expr {
    ExprKind kind;
    Span span;

    long long ival = 0;
    double fval = 0;
    bool bval = false;
    unsigned char cval = 0;
    std::string sval;          // string literal payload
    std::string name;          // Ident / Member / Call selector / BasicTypeX

    Tok op = Tok::Eof;         // Unary/Binary operator
    ExprP a, b;                // operands; Call receiver in a (null for self-send/super)
    std::vector<ExprP> args;   // Call arguments / ArrayInit elements
    bool recv_super = false;   // Call through "super."
    TypeP type_ast;            // ArrayTypeX

    // ---- checker annotations ----
    int type = -1;                     // static type (TypeId); -1 = no value
    RefKind ref = RefKind::Unresolved;
    int ref_class = -1;                // ClassObject/Constant/EnumConstant: class id
    int ref_slot = -1;                 // Local/Param slot, Field frame index, const index
    int target_method = -1;            // Call: statically bound method (private/super/new...)
    std::string sig_key;               // Call: dispatch key for virtual sends
    std::vector<int> arg_conv;         // Call: per-arg conversion (see Conv in program.hpp)
    int conv = 0;                      // whole-expression conversion (unbox in operators)
    int variadic_from = -1;            // Call: first argument packed into the trailing array
    int dyn_elem_check = 0;            // ArrayTypeX: element resolved only at run time
};

// ---------------------------------------------------------------- statements

enum class StmtKind {
    ExprStat, VarDecl, InitCall, Return, If, While, Repeat, Loop, For, Case, Try,
    Break, Empty,
};

struct CaseArm {
    std::vector<ExprP> labels;     // constants or class names
    std::vector<StmtP> body;
};

struct Stmt {
    StmtKind kind;
    Span span;

    ExprP expr;                    // ExprStat / Return value / If-While-Repeat cond / Case selector / Try catch
    std::vector<StmtP> body;       // If-then / While / Repeat / Loop / For / Try
    std::vector<StmtP> else_body;  // If-else
    bool has_else = false;

    // VarDecl
    std::string name;
    TypeP var_type;
    ExprP init;                    // optional initializer
    bool expanded = false;
    int slot = -1;                 // checker

    // InitCall: expr is the target postfix expression
    std::vector<ExprP> args;
    int target_method = -1;        // checker: resolved init overload

    // For
    std::string for_var;
    bool for_declares = false;     // inline ": type" form
    TypeP for_type;
    ExprP from, to;
    int for_slot = -1;

    // Case
    std::vector<CaseArm> arms;
    std::vector<StmtP> otherwise;
    bool has_otherwise = false;

    // Try
    int try_id = -1;
};

// ---------------------------------------------------------------- declarations

enum class Visibility { Constructor, Public, Subclass, Private };

struct ParamAST {
    std::string name;
    TypeP type;
    bool variadic = false;
    Span span;
};

struct AssertAST {
    bool present = false;
    ExprP before;
    std::vector<StmtP> vars;   // StatVarDecs between before and after
    ExprP after;
    Span span;
};

struct VarDeclAST {
    std::string name;
    TypeP type;
    ExprP init;        // class-object variables only
    bool expanded = false;
    Span span;
    int slot = -1;     // checker: frame index (pre-begin method locals)
};

struct MethodAST {
    bool is_abstract = false;
    std::string name;
    std::vector<ParamAST> params;
    TypeP exc_type;                  // nullptr = default
    TypeP ret_type;                  // nullptr = none
    AssertAST assertion;
    std::vector<VarDeclAST> locals;  // pre-begin "var" block
    std::vector<StmtP> body;
    bool has_body = false;
    Visibility vis = Visibility::Public;
    Span span;
};

struct ConstAST {
    std::string name;
    TypeP type;        // optional
    ExprP value;
    Visibility vis = Visibility::Public;
    Span span;
};

struct EnumAST {
    std::vector<std::pair<std::string, ExprP>> items;   // value expr optional
    Visibility vis = Visibility::Public;
    Span span;
};

struct ClassObjAST {
    std::string name;
    std::vector<MethodAST> methods;     // constructor + public + private
    std::vector<ConstAST> consts;
    std::vector<EnumAST> enums;
    std::vector<VarDeclAST> vars;       // private
    Span span;
};

struct ClassAST {
    std::string name;
    bool is_abstract = false;
    bool is_reflective = false;
    bool is_shell = false;
    TypeP shell_base;                     // shell classes: base type (class or type(X))
    std::vector<std::string> type_params; // parameterized classes (rejected by checker)
    std::string super_name;               // empty = default
    Span super_span;
    std::vector<MethodAST> methods;       // constructor + public + subclass + private
    std::vector<VarDeclAST> vars;         // private instance variables
    std::unique_ptr<ClassObjAST> object;  // paired class object, if declared
    Span span;
    std::string file;
};

struct ProgramAST {
    std::vector<ClassAST> classes;
    std::vector<ClassObjAST> objects;     // standalone class objects
    std::vector<std::string> decl_order;  // names in source order across files
};

struct ParseResult {
    ProgramAST program;
    std::vector<Diagnostic> diags;
};

ParseResult parse(const SourceFile& src);
ParseResult parse_tokens(const SourceFile& src, const std::vector<Token>& toks);

// Pretty-printer: canonical source form. Re-parsing the output yields an
// identical tree (and printing that tree yields the same text).
std::string print_program(const ProgramAST& p);
std::string print_expr(const Expr& e);
std::string print_type(const TypeAST& t);

} // namespace green

#endif
