#ifndef GREEN_INTERP_HPP
#define GREEN_INTERP_HPP

#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "green/program.hpp"

namespace green {

struct Options {
    bool asserts = true;
    bool reflect_classes = false;
    bool reflect_calls = false;
    bool strict_loop_var = false;
};

// Raised by Runtime.exit (and the hard-catch handlers, which call it).
struct ExitSignal {
    int code = 0;
};

// Unwinds the C++ stack from a throw site to the try statement whose catch
// frame accepted the exception. `target` is the frame's stable id.
struct UnwindToken {
    uint64_t target = 0;
};

struct CatchFrameRec {
    uint64_t id = 0;
    Value catch_obj;
    int try_id = -1;
};

// One Green activation. `self` is the receiver as the program sees it; when
// a shell method runs, `field_owner` is the shell instance whose variables
// bare names address, and `layer`/`chain_pos` locate the dispatch cursor for
// super-sends through the layer stack.
struct CallFrame {
    int method = -1;
    Value self;
    ObjPtr field_owner;
    std::vector<Value> slots; // params, then assert vars, then locals
    Value result;             // bound during the after-assertion
    int layer = -1;           // shell index into receiver's shells; -1 = base
    int chain_pos = -1;       // position in the shell class chain
};

class Interp {
  public:
    Interp(Program& p, Options opt, std::ostream& out, std::ostream& err, std::istream& in);

    // Runs class-object initializers, then the entry `run`, then the end
    // list. Returns the process status.
    int run_program(const std::string& entry, const std::vector<std::string>& args);

    Program& prog;
    Options opts;
    std::ostream& sout;
    std::ostream& serr;
    std::istream& sin;

    // ---------- allocation ----------
    ObjPtr alloc_raw(int cls); // zero frame; expanded fields allocated through
    Value make_string(const std::string& s);
    Value make_dynstring(const std::string& s);
    Value intern_literal(const std::string& s);
    Value make_array(TypeId array_type, const std::vector<int64_t>& sizes);
    Value make_iter(TypeId elem, std::vector<Value> items);
    Value make_stack(TypeId elem, std::vector<Value> items);
    Value class_object(int cls);
    Value array_class_object(TypeId array_type); // array(T)[] used as a value

    // ---------- conversions ----------
    Value box(const Value& v);
    Value unbox(const Value& v);

    // ---------- queries ----------
    int runtime_class(const Value& v) const; // -1 for nil
    TypeId runtime_type(const Value& v) const;
    std::string class_name_of(const Value& v) const;
    bool is_subtype(TypeId s, TypeId t) { return prog.tt.is_subtype(s, t); }
    const std::string& str_of(const Value& v) const; // String/DynString payload

    // ---------- dispatch ----------
    // Full layered dispatch by name + arity (shells, extensions, class chain).
    Value send(const Value& recv, const std::string& name, std::vector<Value> args);
    // Dispatch with a checker-resolved signature key.
    Value send_key(const Value& recv, const std::string& name, const std::string& sig_key,
                   std::vector<Value> args);
    // Direct invocation, no layer search.
    Value call(int method_id, const Value& self, std::vector<Value> args);
    std::string to_string(const Value& v); // dispatches toString

    // ---------- exceptions ----------
    [[noreturn]] void throw_value(Value exc);
    [[noreturn]] void throw_simple(const char* class_name); // classes with init()
    [[noreturn]] void throw_internal(const std::string& msg);
    Value new_object(int cls, std::vector<Value> init_args); // alloc + init

    // ---------- mirrors (reflect.cpp) ----------
    Value class_info(int cls);
    Value method_info(int mid);
    Value object_method_info(int mid, const Value& recv);
    Value any_object_info(const Value& v);
    Value class_object_info(int cls);
    Value instance_variable_info(int cls, int field_index);

    // ---------- meta (meta.cpp) ----------
    bool shell_allowed(int shell_cls, int target_cls) const;
    bool extension_allowed(int ext_cls, int target_cls) const;
    void load_manifest(const std::string& text); // "allow shell X on A, B"
    ObjPtr extension_frame(const ObjPtr& obj, int ext_cls); // lazy, runs constructor

    // ---------- engine state ----------
    std::vector<CallFrame> frames;
    std::vector<CatchFrameRec> catch_stack;
    std::vector<Value> class_objects;          // per class index; nil for shells
    std::map<TypeId, Value> array_class_objects;
    std::vector<Value> end_list;               // Runtime.putAtEndList
    std::map<int, std::vector<int>> extensions; // class -> attached extension stack

    uint64_t next_catch_id = 1;
    uint64_t push_catch(const Value& co, int try_id);
    void pop_catch_to(size_t size);

    // Pending handler set by throw_value between dispatch and unwinding.
    struct PendingHandler {
        uint64_t target = 0;
        Value exc;
        Value catch_obj;
        Value class_exc; // class object of the matched throw's parameter class
        int method = -1; // matched throw method
        int layer = -1;  // shell layer on the catch object, -1 = base
    };
    PendingHandler pending;

    // interceptAll support: value produced by the last mi.invoke in the
    // current interception, adopted as the send's result.
    Value intercept_result;
    bool intercept_invoked = false;

    size_t max_depth = 4000;

    // Runs one method body (interp.cpp). Natives never call this directly.
    Value exec_method(int method_id, const Value& self, ObjPtr field_owner,
                      std::vector<Value> args, int layer, int chain_pos);

  private:
    std::map<std::string, ObjPtr> literals_;
    std::map<int, Value> class_info_cache_;
    std::map<int, Value> method_info_cache_;
    std::map<std::pair<const Obj*, int>, ObjPtr> ext_frames_;
    std::map<int, std::set<int>> allow_shell_;
    std::map<int, std::set<int>> allow_ext_;
    bool end_list_running_ = false;
    void run_end_list();
    friend struct NativeImpls;
};

// checker.cpp — rules (a)-(l), overloads, boxing, exception coverage.
// Appends diagnostics (errors and warnings); returns false on any error.
bool check_program(Program& p, std::vector<Diagnostic>& diags);

// Validates that `entry` names a class object with exactly one run method of
// a legal signature; returns its class index or -1 (diagnostic appended).
int resolve_entry(Program& p, const std::string& entry, std::vector<Diagnostic>& diags);

} // namespace green

#endif
