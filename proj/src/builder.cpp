// Build pipeline: parse the prelude and the generated catch classes, declare
// every class (types first, so signatures can mention anything), define
// methods and fields, synthesize class-object methods, then freeze the type
// descriptors and the dispatch tables.

#include <algorithm>
#include <functional>
#include <set>

#include "internal.hpp"

namespace green {

namespace {

struct Builder {
    Program& p;
    std::vector<Diagnostic>& diags;
    bool ok = true;

    void error(const std::string& file, Span sp, const char* code, std::string msg) {
        diags.push_back({Severity::Error, file, sp, code, std::move(msg)});
        ok = false;
    }

    // ---- step 4: declare -------------------------------------------------

    void declare_parsed_class(ClassAST& c, bool user) {
        if (p.class_index.count(c.name)) {
            error(c.file, c.span, "duplicate-class",
                  "class '" + c.name + "' is already defined");
            return;
        }
        if (!c.type_params.empty())
            error(c.file, c.span, "parameterized-class",
                  "parameterized classes are not supported");
        ClassModel m;
        m.name = c.name;
        m.idx = (int)p.classes.size();
        m.is_abstract = c.is_abstract;
        m.is_shell = c.is_shell;
        m.user = user;
        m.ast = &c;
        m.obj_ast = c.object.get();
        m.file = c.file;
        if (!c.is_shell) {
            TypeDescriptor d;
            d.name = c.name;
            d.kind = TypeKind::Class;
            m.type = p.tt.add(std::move(d));
        }
        TypeDescriptor od;
        od.name = "Type$" + c.name;
        od.kind = TypeKind::ClassObject;
        m.obj_type = p.tt.add(std::move(od));
        p.class_index[c.name] = m.idx;
        p.classes.push_back(std::move(m));
    }

    void declare_parsed_object(ClassObjAST& o, bool user, const std::string& file) {
        int existing = p.find_class(o.name);
        if (existing >= 0) {
            ClassModel& c = p.classes[existing];
            if (c.obj_ast) {
                error(file, o.span, "duplicate-object",
                      "object '" + o.name + "' is already defined");
                return;
            }
            c.obj_ast = &o;
            return;
        }
        ClassModel m;
        m.name = o.name;
        m.idx = (int)p.classes.size();
        m.user = user;
        m.has_instance_side = false;
        m.super = p.c_any_class;
        m.obj_ast = &o;
        m.file = file;
        TypeDescriptor od;
        od.name = "Type$" + o.name;
        od.kind = TypeKind::ClassObject;
        m.obj_type = p.tt.add(std::move(od));
        p.class_index[o.name] = m.idx;
        p.classes.push_back(std::move(m));
    }

    void declare_ast(ProgramAST& ast, bool user, const std::string& label) {
        for (ClassAST& c : ast.classes) declare_parsed_class(c, user);
        for (ClassObjAST& o : ast.objects)
            declare_parsed_object(o, user,
                                  !user                ? label
                                  : ast.classes.empty() ? ""
                                                        : ast.classes[0].file);
    }

    // ---- step 5: supers --------------------------------------------------

    void resolve_supers() {
        for (ClassModel& c : p.classes) {
            if (!c.ast) continue; // builtins come prewired
            const ClassAST& a = *c.ast;
            if (c.is_shell) {
                resolve_shell(c, a);
                continue;
            }
            if (a.super_name.empty()) {
                c.super = p.c_any_class;
                continue;
            }
            int s = p.find_class(a.super_name);
            if (s < 0) {
                error(c.file, a.super_span, "unknown-superclass",
                      "unknown superclass '" + a.super_name + "'");
                c.super = p.c_any_class;
                continue;
            }
            const ClassModel& sc = p.classes[s];
            if (sc.is_shell || !sc.has_instance_side || sc.type == kNoType) {
                error(c.file, a.super_span, "bad-superclass",
                      "'" + a.super_name + "' cannot be subclassed");
                c.super = p.c_any_class;
                continue;
            }
            if (!sc.subclassable || sc.is_basic) {
                error(c.file, a.super_span, "final-superclass",
                      "class '" + a.super_name + "' is final");
                c.super = p.c_any_class;
                continue;
            }
            c.super = s;
        }

        // cycles: cut them at the back edge so later phases terminate
        for (ClassModel& c : p.classes) {
            std::set<int> seen;
            for (int k = c.idx; k != -1; k = p.classes[k].super) {
                if (!seen.insert(k).second) {
                    error(c.file, c.ast ? c.ast->span : Span{}, "superclass-cycle",
                          "superclass cycle through '" + p.classes[k].name + "'");
                    p.classes[k].super = p.c_any_class == k ? -1 : p.c_any_class;
                    break;
                }
            }
        }

        for (ClassModel& c : p.classes) {
            c.is_exception = p.class_subclass_of(c.idx, p.c_exception);
            c.is_unchecked = p.class_subclass_of(c.idx, p.c_unchecked);
        }
    }

    void resolve_shell(ClassModel& c, const ClassAST& a) {
        c.super = -1;
        if (!a.super_name.empty()) {
            int s = p.find_class(a.super_name);
            if (s < 0 || !p.classes[s].is_shell)
                error(c.file, a.super_span, "bad-shell-superclass",
                      "a shell can only extend another shell");
            else
                c.shell_super = s;
        }
        if (!a.shell_base) {
            error(c.file, a.span, "missing-shell-base", "shell has no base type");
            return;
        }
        const TypeAST& b = *a.shell_base;
        const std::string& name = b.name;
        int base = p.find_class(name);
        if (base < 0 || p.classes[base].is_shell) {
            error(c.file, b.span, "bad-shell-base", "unknown shell base '" + name + "'");
            return;
        }
        c.shell_base_class = base;
        if (b.kind == TypeAST::TypeOf) {
            c.shell_on_object = true;
            c.shell_base = p.classes[base].obj_type;
        } else {
            if (p.classes[base].type == kNoType || p.classes[base].is_basic) {
                error(c.file, b.span, "bad-shell-base",
                      "'" + name + "' cannot carry a shell");
                return;
            }
            c.shell_base = p.classes[base].type;
        }
    }

    // ---- step 7: define --------------------------------------------------

    TypeId resolve_type(const TypeAST* t, const std::string& file) {
        TypeId r = resolve_type_ast(p, t, file, diags);
        if (t && r == kNoType) ok = false;
        return r;
    }

    void define_method(ClassModel& c, MethodAST& a, bool on_object) {
        MethodModel m;
        m.name = a.name;
        m.id = (int)p.methods.size();
        m.owner = c.idx;
        m.on_object = on_object;
        m.vis = a.vis;
        m.is_abstract = a.is_abstract;
        m.is_init = a.name == "init";
        m.ast = &a;
        for (size_t i = 0; i < a.params.size(); i++) {
            ParamAST& par = a.params[i];
            if (par.variadic) {
                if (i + 1 != a.params.size())
                    error(c.file, par.span, "bad-variadic",
                          "only the last parameter can be variadic");
                m.variadic = true;
            }
            m.params.push_back(resolve_type(par.type.get(), c.file));
            m.param_names.push_back(par.name);
        }
        m.exc = resolve_type(a.exc_type.get(), c.file);
        m.ret = resolve_type(a.ret_type.get(), c.file);
        auto& list = on_object ? c.obj_methods : c.methods;
        m.decl_index = (int)list.size();
        list.push_back(m.id);
        p.methods.push_back(std::move(m));
    }

    void define_field(ClassModel& c, VarDeclAST& v, bool on_object) {
        FieldModel f;
        f.name = v.name;
        f.type = resolve_type(v.type.get(), c.file);
        f.expanded = v.expanded || (v.type && v.type->expanded);
        f.ast = v.type.get();
        f.init = v.init.get();
        (on_object ? c.obj_fields : c.fields).push_back(std::move(f));
    }

    void define_classes() {
        for (ClassModel& c : p.classes) {
            if (c.ast) {
                for (MethodAST& m : c.ast->methods) define_method(c, m, false);
                for (VarDeclAST& v : c.ast->vars) define_field(c, v, false);
            }
            if (c.obj_ast) {
                for (MethodAST& m : c.obj_ast->methods) define_method(c, m, true);
                for (VarDeclAST& v : c.obj_ast->vars) define_field(c, v, true);
                define_members(c, *c.obj_ast);
            }
        }
    }

    // ---- step 9 folded in: constants and enums ----------------------------

    bool fold_literal(const Expr* e, Value& out) {
        if (!e) return false;
        switch (e->kind) {
        case ExprKind::IntLit: out = Value::of_int((int32_t)e->ival); return true;
        case ExprKind::LongLit: out = Value::of_long(e->ival); return true;
        case ExprKind::ByteLit: out = Value::of_byte((uint8_t)e->ival); return true;
        case ExprKind::RealLit: out = Value::of_real((float)e->fval); return true;
        case ExprKind::DoubleLit: out = Value::of_double(e->fval); return true;
        case ExprKind::CharLit: out = Value::of_char(e->cval); return true;
        case ExprKind::BoolLit: out = Value::of_bool(e->bval); return true;
        case ExprKind::Unary:
            if (e->op == Tok::Minus && fold_literal(e->a.get(), out)) {
                switch (out.tag) {
                case Tag::Int: out.i = -out.i; return true;
                case Tag::Long: out.l = -out.l; return true;
                case Tag::Real: out.r = -out.r; return true;
                case Tag::Double: out.d = -out.d; return true;
                default: return false;
                }
            }
            return false;
        default: return false;
        }
    }

    TypeId literal_type(const Value& v) const {
        switch (v.tag) {
        case Tag::Bool: return p.t_bool;
        case Tag::Char: return p.t_char;
        case Tag::Byte: return p.t_byte;
        case Tag::Int: return p.t_int;
        case Tag::Long: return p.t_long;
        case Tag::Real: return p.t_real;
        case Tag::Double: return p.t_double;
        default: return kNoType;
        }
    }

    void define_members(ClassModel& c, ClassObjAST& o) {
        for (ConstAST& ca : o.consts) {
            ConstModel cm;
            cm.name = ca.name;
            cm.is_public = ca.vis == Visibility::Public;
            cm.type = resolve_type(ca.type.get(), c.file);
            Value v;
            if (fold_literal(ca.value.get(), v)) {
                cm.value = v;
                if (cm.type == kNoType) cm.type = literal_type(v);
            } else if (ca.value && ca.value->kind == ExprKind::StrLit) {
                cm.expr = ca.value.get();
                if (cm.type == kNoType) cm.type = p.classes[p.c_string].type;
            } else {
                error(c.file, ca.span, "bad-constant",
                      "constant initializer must be a literal");
            }
            c.consts.push_back(std::move(cm));
        }
        for (EnumAST& ea : o.enums) {
            int next = 0;
            for (auto& [name, expr] : ea.items) {
                if (expr) {
                    Value v;
                    if (!fold_literal(expr.get(), v) || v.tag != Tag::Int) {
                        error(c.file, ea.span, "bad-enum",
                              "enum value for '" + name + "' must be an integer literal");
                        v = Value::of_int(next);
                    }
                    next = v.i;
                }
                EnumItemModel item;
                item.name = name;
                item.value = next;
                item.is_public = ea.vis == Visibility::Public;
                c.enums.push_back(item);
                next++;
            }
        }
        // duplicate names or duplicate enum values are declaration errors
        std::set<std::string> names;
        for (const ConstModel& cm : c.consts)
            if (!names.insert(cm.name).second)
                error(c.file, o.span, "duplicate-constant",
                      "constant '" + cm.name + "' is declared twice");
        std::set<int> values;
        for (const EnumItemModel& e : c.enums) {
            if (!names.insert(e.name).second)
                error(c.file, o.span, "duplicate-constant",
                      "enum constant '" + e.name + "' is declared twice");
            if (!values.insert(e.value).second)
                error(c.file, o.span, "duplicate-enum-value",
                      "enum constant '" + e.name + "' repeats the value " +
                          std::to_string(e.value));
        }
    }

    // ---- steps 11 and 12: descriptors, layouts, dispatch ------------------

    int effective_super(const ClassModel& c) const {
        return c.is_shell ? c.shell_super : c.super;
    }

    void freeze() {
        const TypeId dflt = p.classes[p.c_catch_unchecked].type;
        for (MethodModel& m : p.methods)
            if (m.exc == kNoType) m.exc = dflt;

        std::vector<char> done(p.classes.size(), 0);
        std::function<void(int)> flatten = [&](int idx) {
            if (done[idx]) return;
            done[idx] = 1;
            ClassModel& c = p.classes[idx];
            int sup = effective_super(c);
            if (sup >= 0) flatten(sup);

            if (c.type != kNoType) {
                std::vector<MethodSignature> sigs;
                auto add = [&](const MethodSignature& s) {
                    for (const MethodSignature& t : sigs)
                        if (t.name == s.name && t.params == s.params && t.ret == s.ret &&
                            t.exception == s.exception && t.variadic == s.variadic)
                            return;
                    sigs.push_back(s);
                };
                for (int mid : c.methods) {
                    const MethodModel& m = p.methods[mid];
                    if (m.vis != Visibility::Public || m.is_init) continue;
                    add({m.name, m.params, m.exc, m.ret, m.variadic});
                }
                if (sup >= 0 && p.classes[sup].type != kNoType)
                    for (const MethodSignature& s : p.tt.at(p.classes[sup].type).sigs)
                        add(s);
                p.tt.at_mut(c.type).sigs = std::move(sigs);
            }
            if (c.obj_type != kNoType) {
                std::vector<MethodSignature> osigs;
                for (int mid : c.obj_methods) {
                    const MethodModel& m = p.methods[mid];
                    if (m.vis != Visibility::Public || m.is_init) continue;
                    osigs.push_back({m.name, m.params, m.exc, m.ret, m.variadic});
                }
                p.tt.at_mut(c.obj_type).sigs = std::move(osigs);
            }
        };
        for (int i = 0; i < (int)p.classes.size(); i++) flatten(i);

        // descriptors are complete: canonical keys are stable from here on
        for (MethodModel& m : p.methods)
            m.sig_key = p.sig_key_of(m.name, m.params, m.variadic);

        std::fill(done.begin(), done.end(), 0);
        std::function<void(int)> layout = [&](int idx) {
            if (done[idx]) return;
            done[idx] = 1;
            ClassModel& c = p.classes[idx];
            int sup = effective_super(c);
            if (sup >= 0) layout(sup);

            c.frame_size = sup >= 0 ? p.classes[sup].frame_size : 0;
            for (FieldModel& f : c.fields) f.slot = c.frame_size++;
            c.obj_frame_size = 0;
            for (FieldModel& f : c.obj_fields) f.slot = c.obj_frame_size++;

            if (sup >= 0) c.vtab = p.classes[sup].vtab;
            for (int mid : c.methods) {
                const MethodModel& m = p.methods[mid];
                if (m.vis == Visibility::Private || m.is_init) continue;
                c.vtab[m.sig_key] = mid;
            }
            for (int mid : c.obj_methods) {
                const MethodModel& m = p.methods[mid];
                if (m.vis == Visibility::Private || m.is_init) continue;
                c.obj_vtab[m.sig_key] = mid;
            }

            std::set<std::string> seen;
            for (int k = idx; k != -1; k = effective_super(p.classes[k])) {
                for (int mid : p.classes[k].methods) {
                    const MethodModel& m = p.methods[mid];
                    if (m.name != "throw" || m.is_init || m.params.size() != 1) continue;
                    if (!seen.insert(m.sig_key).second) continue;
                    c.throw_scan.push_back({mid, m.params[0]});
                }
            }
            for (int mid : c.obj_methods) {
                const MethodModel& m = p.methods[mid];
                if (m.name != "throw" || m.is_init || m.params.size() != 1) continue;
                c.obj_throw_scan.push_back({mid, m.params[0]});
            }
        };
        for (int i = 0; i < (int)p.classes.size(); i++) layout(i);

        // hard-catch variants: their throw bodies become the uncaught trap
        for (ClassModel& c : p.classes) {
            if (c.name.rfind("HCatch", 0) != 0) continue;
            for (int mid : c.methods)
                if (p.methods[mid].name == "throw") p.methods[mid].native = nat_hard_uncaught;
            for (int mid : c.obj_methods)
                if (p.methods[mid].name == "throw") p.methods[mid].native = nat_hard_uncaught;
        }
    }
};

ProgramAST parse_internal(const std::string& name, const std::string& text,
                          std::vector<Diagnostic>& diags, bool& ok) {
    ParseResult r = parse(SourceFile{name, text});
    for (Diagnostic& d : r.diags) {
        if (d.severity == Severity::Error) ok = false;
        diags.push_back(std::move(d));
    }
    return std::move(r.program);
}

}  // namespace

TypeId resolve_type_ast(Program& p, const TypeAST* t, const std::string& file,
                        std::vector<Diagnostic>& diags) {
    if (!t) return kNoType;
    auto error = [&](Span sp, const char* code, std::string msg) {
        diags.push_back({Severity::Error, file, sp, code, std::move(msg)});
    };
    auto basic_type = [&](const std::string& n) -> TypeId {
        if (n == "char") return p.t_char;
        if (n == "boolean") return p.t_bool;
        if (n == "byte") return p.t_byte;
        if (n == "integer") return p.t_int;
        if (n == "long") return p.t_long;
        if (n == "real") return p.t_real;
        if (n == "double") return p.t_double;
        return kNoType;
    };
    switch (t->kind) {
    case TypeAST::Basic:
        return basic_type(t->name);
    case TypeAST::Named: {
        TypeId b = basic_type(t->name);
        if (b != kNoType && t->args.empty()) return b;
        if (!t->args.empty()) {
            if ((t->name == "DS.Iter" || t->name == "DS.Stack") && t->args.size() == 1) {
                TypeId e = resolve_type_ast(p, t->args[0].get(), file, diags);
                if (e == kNoType) return kNoType;
                return t->name == "DS.Iter" ? p.iter_of(e) : p.stack_of(e);
            }
            error(t->span, "parameterized-type",
                  "'" + t->name + "' does not take type parameters");
            return kNoType;
        }
        int c = p.find_class(t->name);
        if (c < 0) {
            error(t->span, "unknown-type", "unknown type '" + t->name + "'");
            return kNoType;
        }
        if (p.classes[c].type == kNoType) {
            error(t->span, "not-a-type",
                  p.classes[c].is_shell
                      ? "shell '" + t->name + "' cannot be used as a type"
                      : "'" + t->name + "' names an object, not a type");
            return kNoType;
        }
        return p.classes[c].type;
    }
    case TypeAST::TypeOf: {
        int c = p.find_class(t->name);
        if (c < 0) {
            error(t->span, "unknown-type", "unknown class '" + t->name + "'");
            return kNoType;
        }
        return p.classes[c].obj_type;
    }
    case TypeAST::Array: {
        TypeId e = t->elem ? resolve_type_ast(p, t->elem.get(), file, diags) : kNoType;
        if (e == kNoType) {
            if (!t->elem)
                error(t->span, "bad-array-type", "array type needs an element type");
            return kNoType;
        }
        bool exp_elem = t->elem && t->elem->expanded;
        if (exp_elem) {
            int c = p.class_by_type(e);
            if (p.tt.at(e).kind != TypeKind::Class || c < 0 || p.classes[c].is_abstract ||
                p.classes[c].is_basic) {
                error(t->elem->span, "bad-expansion",
                      "'@' array elements need a concrete class");
                return kNoType;
            }
        }
        return p.array_of(e, (int)t->dims.size(), exp_elem);
    }
    }
    return kNoType;
}

bool build_program(Program& p, ProgramAST user, std::vector<Diagnostic>& diags) {
    Builder b{p, diags};
    p.user_ast = std::move(user);
    p.prelude_ast = parse_internal("<prelude>", prelude_source(), diags, b.ok);
    p.catch_ast = parse_internal(
        "<catch>", synthesized_catch_source(p.prelude_ast, p.user_ast), diags, b.ok);
    if (!b.ok) return false; // a broken prelude is a bug, not a user error

    builtin_declare(p);
    b.declare_ast(p.prelude_ast, false, "<prelude>");
    b.declare_ast(p.catch_ast, false, "<catch>");
    b.declare_ast(p.user_ast, true, "");

    p.c_exception = p.find_class("Exception");
    p.c_unchecked = p.find_class("UncheckedException");
    p.c_catch = p.find_class("Catch");
    p.c_catch_unchecked = p.find_class("CatchUncheckedException");
    p.c_hcatch_unchecked = p.find_class("HCatchUncheckedException");
    p.c_function = p.find_class("Function");

    b.resolve_supers();
    builtin_define(p);
    b.define_classes();
    if (!b.ok) return false; // type resolution failed somewhere

    for (int i = 0; i < (int)p.classes.size(); i++) synthesize_class_object(p, i);
    b.freeze();
    return b.ok;
}

}  // namespace green
