// The Meta object: dynamic shell and extension attachment, guarded by the
// allow-manifest. Also the Interp side of it: manifest parsing, the allowed
// sets, and lazy extension frames.

#include <sstream>

#include "internal.hpp"

namespace green {

namespace {

[[noreturn]] void throw_with(Interp& I, const char* cls, const Value& arg) {
    int c = I.prog.find_class(cls);
    I.throw_value(I.new_object(c, {arg}));
}

int no_arg_init(const Program& p, int cls) {
    for (int mid : p.classes[cls].methods) {
        const MethodModel& m = p.methods[mid];
        if (m.is_init && m.params.empty() && !m.variadic) return mid;
    }
    return -1;
}

Value nat_meta_attachshell(Interp& I, const MethodModel&, const Value&,
                           std::vector<Value>& a) {
    const Value& target = a[0];
    if (target.is_nil() || a[1].is_nil()) I.throw_simple("MessageSendToNilException");
    int sh = I.prog.find_class(I.str_of(a[1]));
    if (sh < 0 || !I.prog.classes[sh].is_shell) throw_with(I, "ClassNotInAllowedSetException", target);
    const ClassModel& shell = I.prog.classes[sh];

    int target_cls;
    if (shell.shell_on_object) {
        if (!target.is_ref() || !target.ref->is_class_object)
            throw_with(I, "ClassNotInAllowedSetException", target);
        target_cls = target.ref->cls;
    } else {
        if (!target.is_ref() || target.ref->is_class_object || target.ref->arr)
            throw_with(I, "ClassNotInAllowedSetException", target);
        target_cls = I.runtime_class(target);
    }
    if (!I.prog.class_subclass_of(target_cls, shell.shell_base_class))
        throw_with(I, "ClassNotInAllowedSetException", target);
    if (!I.shell_allowed(sh, target_cls))
        throw_with(I, "ClassNotInAllowedSetException", target);

    ObjPtr frame = I.alloc_raw(sh);
    target.ref->shells.push_back(frame);
    if (int init = no_arg_init(I.prog, sh); init >= 0)
        I.exec_method(init, target, frame, {}, (int)target.ref->shells.size() - 1, 0);
    return Value::nil();
}

Value nat_meta_removeshell(Interp& I, const MethodModel&, const Value&,
                           std::vector<Value>& a) {
    const Value& target = a[0];
    if (target.is_nil()) I.throw_simple("MessageSendToNilException");
    if (!target.is_ref() || target.ref->shells.empty())
        throw_with(I, "NoShellException", target);
    target.ref->shells.pop_back();
    return Value::nil();
}

Value nat_meta_attachextension(Interp& I, const MethodModel&, const Value&,
                               std::vector<Value>& a) {
    const Value& target = a[0];
    if (target.is_nil() || a[1].is_nil()) I.throw_simple("MessageSendToNilException");
    if (!target.is_ref() || !target.ref->is_class_object)
        throw_with(I, "ClassNotInAllowedSetException", target);
    int target_cls = target.ref->cls;
    int ext = I.prog.find_class(I.str_of(a[1]));
    if (ext < 0) throw_with(I, "ClassNotInAllowedSetException", target);
    const ClassModel& e = I.prog.classes[ext];
    if (e.is_shell || e.is_abstract || !e.has_instance_side)
        throw_with(I, "ClassNotInAllowedSetException", target);
    if (!I.extension_allowed(ext, target_cls))
        throw_with(I, "ClassNotInAllowedSetException", target);
    I.extensions[target_cls].push_back(ext);
    return Value::nil();
}

Value nat_meta_removeextension(Interp& I, const MethodModel&, const Value&,
                               std::vector<Value>& a) {
    const Value& target = a[0];
    if (target.is_nil()) I.throw_simple("MessageSendToNilException");
    if (!target.is_ref() || !target.ref->is_class_object)
        throw_with(I, "NoExtensionException", target);
    auto it = I.extensions.find(target.ref->cls);
    if (it == I.extensions.end() || it->second.empty())
        throw_with(I, "NoExtensionException", target);
    it->second.pop_back();
    return Value::nil();
}

}  // namespace

void meta_declare(Program& p) {
    BuiltinClass b;
    b.name = "Meta";
    b.super = "AnyClass";
    b.instance_side = false;
    p.c_meta = declare_class(p, b);
}

void meta_define(Program& p) {
    const TypeId t_any = p.classes[p.c_any].type;
    const TypeId t_aco = p.classes[p.c_any_class_object].type;
    const TypeId t_str = p.classes[p.c_string].type;
    int cme = p.find_class("CatchMetaException");
    const TypeId exc = cme < 0 ? kNoType : p.classes[cme].type;

    add_native(p, p.c_meta, true, Visibility::Public, "attachShell", {t_any, t_str},
               {"target", "shellClassName"}, kNoType, exc, false, nat_meta_attachshell);
    add_native(p, p.c_meta, true, Visibility::Public, "removeShell", {t_any}, {"target"},
               kNoType, exc, false, nat_meta_removeshell);
    add_native(p, p.c_meta, true, Visibility::Public, "attachExtension", {t_aco, t_str},
               {"target", "extensionClassName"}, kNoType, exc, false,
               nat_meta_attachextension);
    add_native(p, p.c_meta, true, Visibility::Public, "removeExtension", {t_aco},
               {"target"}, kNoType, exc, false, nat_meta_removeextension);
}

// ---------------------------------------------------------------------------
// Interp side

bool Interp::shell_allowed(int shell_cls, int target_cls) const {
    auto it = allow_shell_.find(shell_cls);
    return it != allow_shell_.end() && it->second.count(target_cls) > 0;
}

bool Interp::extension_allowed(int ext_cls, int target_cls) const {
    auto it = allow_ext_.find(ext_cls);
    return it != allow_ext_.end() && it->second.count(target_cls) > 0;
}

// Lines of the form
//   allow shell DrawCount on Figure, Circle
//   allow extension Border on Window
// Anything after a '#' is a comment; unknown class names are skipped.
void Interp::load_manifest(const std::string& text) {
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string allow, kind, name, on;
        if (!(ls >> allow)) continue;
        if (allow != "allow" || !(ls >> kind >> name >> on) || on != "on") continue;
        bool is_shell = kind == "shell";
        if (!is_shell && kind != "extension") continue;
        int cls = prog.find_class(name);
        if (cls < 0) continue;
        std::string targets;
        std::getline(ls, targets);
        std::istringstream ts(targets);
        std::string t;
        while (std::getline(ts, t, ',')) {
            size_t b = t.find_first_not_of(" \t");
            size_t e = t.find_last_not_of(" \t");
            if (b == std::string::npos) continue;
            int tc = prog.find_class(t.substr(b, e - b + 1));
            if (tc < 0) continue;
            (is_shell ? allow_shell_ : allow_ext_)[cls].insert(tc);
        }
    }
}

ObjPtr Interp::extension_frame(const ObjPtr& obj, int ext_cls) {
    auto key = std::make_pair((const Obj*)obj.get(), ext_cls);
    auto it = ext_frames_.find(key);
    if (it != ext_frames_.end()) return it->second;
    ObjPtr frame = alloc_raw(ext_cls);
    ext_frames_[key] = frame;
    if (int init = no_arg_init(prog, ext_cls); init >= 0)
        exec_method(init, Value::of_ref(obj), frame, {}, -1, -1);
    return frame;
}

}  // namespace green
