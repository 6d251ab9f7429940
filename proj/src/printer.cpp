#include "green/ast.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace green {

namespace {

// Shortest decimal form that parses back to exactly the same value.
std::string shortest_float(double v, bool is_double) {
    char buf[64];
    int maxp = is_double ? 17 : 9;
    for (int p = 1; p <= maxp; p++) {
        std::snprintf(buf, sizeof buf, "%.*g", p, v);
        double back = std::strtod(buf, nullptr);
        if (is_double ? back == v : static_cast<float>(back) == static_cast<float>(v))
            break;
    }
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

std::string escape_char(unsigned char c, char quote) {
    switch (c) {
    case '\n': return "\\n";
    case '\t': return "\\t";
    case '\r': return "\\r";
    case '\0': return "\\0";
    case '\\': return "\\\\";
    default:
        if (c == quote) return std::string("\\") + static_cast<char>(quote);
        if (c < 32 || c > 126) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02X", c);
            return buf;
        }
        return std::string(1, static_cast<char>(c));
    }
}

// Precedence levels; larger binds tighter. Mirrors the parser.
int level_of(Tok op) {
    switch (op) {
    case Tok::KwOr: return 2;
    case Tok::KwXor: return 3;
    case Tok::KwAnd: return 4;
    case Tok::EqEq: case Tok::Ne: case Tok::Lt: case Tok::Gt: case Tok::Le:
    case Tok::Ge: return 5;
    case Tok::Plus: case Tok::Minus: return 6;
    case Tok::Slash: case Tok::Star: case Tok::Percent: return 7;
    case Tok::Pipe: return 8;
    case Tok::Caret: return 9;
    case Tok::Amp: return 10;
    case Tok::Shl: case Tok::Shr: return 11;
    default: return 13;
    }
}

bool nonassoc(Tok op) {
    return level_of(op) == 5 || level_of(op) == 11;
}

const char* op_text(Tok op) {
    switch (op) {
    case Tok::KwOr: return "or";
    case Tok::KwXor: return "xor";
    case Tok::KwAnd: return "and";
    case Tok::KwNot: return "not";
    case Tok::EqEq: return "==";
    case Tok::Ne: return "<>";
    case Tok::Lt: return "<";
    case Tok::Gt: return ">";
    case Tok::Le: return "<=";
    case Tok::Ge: return ">=";
    case Tok::Plus: return "+";
    case Tok::Minus: return "-";
    case Tok::Slash: return "/";
    case Tok::Star: return "*";
    case Tok::Percent: return "%";
    case Tok::Pipe: return "|";
    case Tok::Caret: return "^";
    case Tok::Amp: return "&";
    case Tok::Shl: return "<<";
    case Tok::Shr: return ">>";
    case Tok::Tilde: return "~";
    case Tok::PlusPlus: return "++";
    case Tok::MinusMinus: return "--";
    default: return "?";
    }
}

struct Printer {
    std::string out;
    int indent = 0;

    void nl() {
        out += "\n";
        for (int i = 0; i < indent; i++) out += "  ";
    }
    void emit(const std::string& s) { out += s; }

    int expr_level(const Expr& e) {
        switch (e.kind) {
        case ExprKind::Assign: return 1;
        case ExprKind::Binary: return level_of(e.op);
        case ExprKind::Unary: return 12;
        default: return 13;
        }
    }

    void expr(const Expr& e, int min_level) {
        bool parens = expr_level(e) < min_level;
        if (parens) emit("(");
        expr_inner(e);
        if (parens) emit(")");
    }

    void expr_inner(const Expr& e) {
        switch (e.kind) {
        case ExprKind::IntLit: emit(std::to_string(e.ival)); break;
        case ExprKind::LongLit: emit(std::to_string(e.ival) + "L"); break;
        case ExprKind::ByteLit: emit(std::to_string(e.ival) + "b"); break;
        case ExprKind::RealLit:
            emit(shortest_float(static_cast<float>(e.fval), false));
            break;
        case ExprKind::DoubleLit: emit(shortest_float(e.fval, true) + "d"); break;
        case ExprKind::CharLit: emit("'" + escape_char(e.cval, '\'') + "'"); break;
        case ExprKind::StrLit: {
            std::string s = "\"";
            for (unsigned char c : e.sval) s += escape_char(c, '"');
            emit(s + "\"");
            break;
        }
        case ExprKind::BoolLit: emit(e.bval ? "true" : "false"); break;
        case ExprKind::NilLit: emit("nil"); break;
        case ExprKind::Ident: emit(e.name); break;
        case ExprKind::SelfX: emit("self"); break;
        case ExprKind::ResultX: emit("result"); break;
        case ExprKind::ExceptionX: emit("exception"); break;
        case ExprKind::BasicTypeX: emit(e.name); break;
        case ExprKind::ArrayTypeX: emit(print_type(*e.type_ast)); break;
        case ExprKind::Unary: {
            const char* t = op_text(e.op);
            emit(t);
            if (e.op == Tok::KwNot) emit(" ");
            // parenthesize any non-postfix operand: avoids token gluing (--x)
            expr(*e.a, 13);
            break;
        }
        case ExprKind::Binary: {
            int lv = level_of(e.op);
            expr(*e.a, nonassoc(e.op) ? lv + 1 : lv);
            emit(std::string(" ") + op_text(e.op) + " ");
            expr(*e.b, lv + 1);
            break;
        }
        case ExprKind::Assign:
            expr(*e.a, 13);
            emit(" = ");
            expr(*e.b, 1);
            break;
        case ExprKind::Index:
            expr(*e.a, 13);
            emit("[");
            expr(*e.b, 1);
            emit("]");
            break;
        case ExprKind::Member:
            expr(*e.a, 13);
            emit("." + e.name);
            break;
        case ExprKind::Call: {
            if (e.recv_super) {
                emit("super." + e.name);
            } else if (e.a) {
                expr(*e.a, 13);
                emit("." + e.name);
            } else {
                emit(e.name);
            }
            emit("(");
            for (size_t i = 0; i < e.args.size(); i++) {
                if (i) emit(", ");
                expr(*e.args[i], 1);
            }
            emit(")");
            break;
        }
        case ExprKind::ArrayInit: {
            emit("#(");
            for (size_t i = 0; i < e.args.size(); i++) {
                if (i) emit(", ");
                expr(*e.args[i], 2);
            }
            emit(")");
            break;
        }
        }
    }

    void stmt_list(const std::vector<StmtP>& list) {
        indent++;
        for (auto& s : list) {
            nl();
            stmt(*s);
        }
        indent--;
    }

    void block(const std::vector<StmtP>& list) {
        // always emit begin-end: canonical and unambiguous
        emit("begin");
        stmt_list(list);
        nl();
        emit("end");
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
        case StmtKind::Empty: emit(";"); break;
        case StmtKind::ExprStat:
            expr(*s.expr, 1);
            emit(";");
            break;
        case StmtKind::VarDecl:
            emit("var " + s.name + " : " + print_type(*s.var_type));
            if (s.init) {
                emit(" = ");
                expr(*s.init, 1);
            }
            emit(";");
            break;
        case StmtKind::InitCall:
            expr(*s.expr, 13);
            emit("#init(");
            for (size_t i = 0; i < s.args.size(); i++) {
                if (i) emit(", ");
                expr(*s.args[i], 1);
            }
            emit(");");
            break;
        case StmtKind::Return:
            emit("return");
            if (s.expr) {
                emit(" ");
                expr(*s.expr, 1);
            }
            emit(";");
            break;
        case StmtKind::Break: emit("break;"); break;
        case StmtKind::If:
            emit("if ");
            expr(*s.expr, 2);
            emit(" then");
            stmt_list(s.body);
            if (s.has_else) {
                nl();
                emit("else");
                stmt_list(s.else_body);
            }
            nl();
            emit("endif");
            break;
        case StmtKind::While:
            emit("while ");
            expr(*s.expr, 1);
            emit(" do ");
            block(s.body);
            break;
        case StmtKind::Repeat:
            emit("repeat");
            stmt_list(s.body);
            nl();
            emit("until ");
            expr(*s.expr, 1);
            emit(";");
            break;
        case StmtKind::Loop:
            emit("loop");
            stmt_list(s.body);
            nl();
            emit("end");
            break;
        case StmtKind::For:
            emit("for " + s.for_var);
            if (s.for_declares) emit(" : " + print_type(*s.for_type));
            emit(" = ");
            expr(*s.from, 2);
            emit(" to ");
            expr(*s.to, 2);
            emit(" do ");
            block(s.body);
            break;
        case StmtKind::Case:
            emit("case ");
            expr(*s.expr, 1);
            emit(" of");
            indent++;
            for (auto& arm : s.arms) {
                nl();
                for (size_t i = 0; i < arm.labels.size(); i++) {
                    if (i) emit(", ");
                    expr(*arm.labels[i], 2);
                }
                emit(" : ");
                block(arm.body);
            }
            if (s.has_otherwise) {
                nl();
                emit("otherwise ");
                block(s.otherwise);
            }
            indent--;
            nl();
            emit("end");
            break;
        case StmtKind::Try:
            emit("try(");
            expr(*s.expr, 1);
            emit(")");
            stmt_list(s.body);
            nl();
            emit("end");
            break;
        }
    }

    void method(const MethodAST& m) {
        nl();
        if (m.is_abstract) emit("abstract ");
        emit("proc " + m.name + "(");
        for (size_t i = 0; i < m.params.size(); i++) {
            auto& p = m.params[i];
            if (i) emit("; ");
            emit(p.name + " : ");
            if (p.variadic) emit("...");
            emit(print_type(*p.type));
        }
        emit(")");
        if (m.exc_type) emit(" ( exception : " + print_type(*m.exc_type) + " )");
        if (m.ret_type) emit(" : " + print_type(*m.ret_type));
        if (m.assertion.present) {
            indent++;
            nl();
            emit("assert");
            indent++;
            if (m.assertion.before) {
                nl();
                emit("before ");
                expr(*m.assertion.before, 2);
                emit(";");
            }
            for (auto& v : m.assertion.vars) {
                nl();
                stmt(*v);
            }
            if (m.assertion.after) {
                nl();
                emit("after ");
                expr(*m.assertion.after, 2);
                emit(";");
            }
            indent--;
            nl();
            emit("end");
            indent--;
        }
        if (m.is_abstract) {
            nl();
            return;
        }
        indent++;
        if (!m.locals.empty()) {
            nl();
            emit("var");
            for (auto& v : m.locals) {
                emit(" " + v.name + " : " + print_type(*v.type));
                if (v.init) {
                    emit(" = ");
                    expr(*v.init, 1);
                }
                emit(";");
            }
        }
        nl();
        block(m.body);
        indent--;
        nl();
    }

    void const_decl(const ConstAST& c) {
        nl();
        emit("const " + c.name);
        if (c.type) emit(" : " + print_type(*c.type));
        emit(" = ");
        expr(*c.value, 2);
        emit(";");
    }

    void enum_decl(const EnumAST& e) {
        nl();
        emit("enum(");
        for (size_t i = 0; i < e.items.size(); i++) {
            if (i) emit(", ");
            emit(e.items[i].first);
            if (e.items[i].second) {
                emit(" = ");
                expr(*e.items[i].second, 2);
            }
        }
        emit(");");
    }

    void var_decl(const VarDeclAST& v) {
        nl();
        emit("var " + v.name + " : " + print_type(*v.type));
        if (v.init) {
            emit(" = ");
            expr(*v.init, 1);
        }
        emit(";");
    }

    void class_object(const ClassObjAST& obj) {
        emit("object " + obj.name);
        indent++;
        for (auto& m : obj.methods)
            if (m.vis == Visibility::Constructor) method(m);
        auto section = [&](Visibility vis, const char* name) {
            bool any = false;
            for (auto& m : obj.methods) any = any || m.vis == vis;
            for (auto& c : obj.consts) any = any || c.vis == vis;
            for (auto& e : obj.enums) any = any || e.vis == vis;
            if (vis == Visibility::Private) any = any || !obj.vars.empty();
            if (!any) return;
            nl();
            emit(std::string(name) + ":");
            indent++;
            for (auto& c : obj.consts)
                if (c.vis == vis) const_decl(c);
            for (auto& e : obj.enums)
                if (e.vis == vis) enum_decl(e);
            for (auto& m : obj.methods)
                if (m.vis == vis) method(m);
            if (vis == Visibility::Private)
                for (auto& v : obj.vars) var_decl(v);
            indent--;
        };
        section(Visibility::Public, "public");
        section(Visibility::Private, "private");
        indent--;
        nl();
        emit("end");
        nl();
    }

    void clazz(const ClassAST& cls) {
        if (cls.object) {
            class_object(*cls.object);
            nl();
        }
        if (cls.is_abstract) emit("abstract ");
        if (cls.is_reflective) emit("reflective ");
        if (cls.is_shell) {
            emit("shell class " + cls.name + "( " + print_type(*cls.shell_base) + " )");
        } else {
            emit("class " + cls.name);
            if (!cls.type_params.empty()) {
                emit("(");
                for (size_t i = 0; i < cls.type_params.size(); i++) {
                    if (i) emit(", ");
                    emit(cls.type_params[i]);
                }
                emit(")");
            }
        }
        if (!cls.super_name.empty()) emit(" subclassOf " + cls.super_name);
        indent++;
        for (auto& m : cls.methods)
            if (m.vis == Visibility::Constructor) method(m);
        auto section = [&](Visibility vis, const char* name) {
            bool any = false;
            for (auto& m : cls.methods) any = any || m.vis == vis;
            if (vis == Visibility::Private) any = any || !cls.vars.empty();
            if (!any) return;
            nl();
            emit(std::string(name) + ":");
            indent++;
            for (auto& m : cls.methods)
                if (m.vis == vis) method(m);
            if (vis == Visibility::Private)
                for (auto& v : cls.vars) var_decl(v);
            indent--;
        };
        section(Visibility::Public, "public");
        section(Visibility::Subclass, "subclass");
        section(Visibility::Private, "private");
        indent--;
        nl();
        emit("end");
        nl();
    }
};

} // namespace

std::string print_type(const TypeAST& t) {
    std::string s;
    if (t.expanded) s += "@";
    switch (t.kind) {
    case TypeAST::Basic:
        s += t.name;
        break;
    case TypeAST::Named:
        s += t.name;
        if (!t.args.empty()) {
            s += "(";
            for (size_t i = 0; i < t.args.size(); i++) {
                if (i) s += ", ";
                s += print_type(*t.args[i]);
            }
            s += ")";
        }
        break;
    case TypeAST::TypeOf:
        s += "type(" + t.name + ")";
        break;
    case TypeAST::Array:
        s += "array(";
        if (t.elem) s += print_type(*t.elem);
        else if (t.elem_expr) s += print_expr(*t.elem_expr);
        s += ")";
        for (long long d : t.dims) {
            s += "[";
            if (d >= 0) s += std::to_string(d);
            s += "]";
        }
        break;
    }
    return s;
}

std::string print_expr(const Expr& e) {
    Printer p;
    p.expr(e, 1);
    return p.out;
}

std::string print_program(const ProgramAST& prog) {
    Printer p;
    size_t ci = 0, oi = 0;
    for (const std::string& name : prog.decl_order) {
        if (ci < prog.classes.size() && prog.classes[ci].name == name) {
            p.clazz(prog.classes[ci++]);
        } else if (oi < prog.objects.size() && prog.objects[oi].name == name) {
            p.class_object(prog.objects[oi++]);
        }
        p.nl();
    }
    return p.out;
}

} // namespace green
