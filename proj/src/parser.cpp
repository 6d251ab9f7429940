#include "green/ast.hpp"

#include <cassert>

namespace green {

namespace {

struct Parser {
    const SourceFile& src;
    const std::vector<Token>& toks;
    size_t pos = 0;
    std::vector<Diagnostic> diags;
    int error_budget = 200;

    Parser(const SourceFile& f, const std::vector<Token>& t) : src(f), toks(t) {}

    const Token& cur() const { return toks[pos]; }
    const Token& peek(size_t k = 1) const {
        size_t i = pos + k;
        return i < toks.size() ? toks[i] : toks.back();
    }
    Tok kind() const { return cur().kind; }
    bool at(Tok t) const { return kind() == t; }
    bool at_end() const { return at(Tok::Eof); }

    Token take() {
        Token t = cur();
        if (!at_end()) pos++;
        return t;
    }
    bool accept(Tok t) {
        if (at(t)) {
            take();
            return true;
        }
        return false;
    }

    void error(const std::string& msg, Span sp) {
        if (error_budget-- > 0)
            diags.push_back({Severity::Error, src.name, sp, "syntax", msg});
    }
    void error_here(const std::string& msg) { error(msg, cur().span); }

    Token expect(Tok t, const char* what) {
        if (at(t)) return take();
        error_here(std::string("expected ") + tok_name(t) + " " + what + ", found " +
                   tok_name(kind()));
        return cur();
    }

    // ---------------------------------------------------------------- types

    bool starts_type() const {
        switch (kind()) {
        case Tok::KwBoolean: case Tok::KwByte: case Tok::KwChar: case Tok::KwDouble:
        case Tok::KwInteger: case Tok::KwLong: case Tok::KwReal: case Tok::KwArray:
        case Tok::KwType: case Tok::Ident: case Tok::At:
            return true;
        default:
            return false;
        }
    }

    static const char* basic_name(Tok t) {
        switch (t) {
        case Tok::KwBoolean: return "boolean";
        case Tok::KwByte: return "byte";
        case Tok::KwChar: return "char";
        case Tok::KwDouble: return "double";
        case Tok::KwInteger: return "integer";
        case Tok::KwLong: return "long";
        case Tok::KwReal: return "real";
        default: return nullptr;
        }
    }

    TypeP parse_type() {
        auto t = std::make_unique<TypeAST>();
        t->span = cur().span;
        if (accept(Tok::At)) t->expanded = true;
        if (const char* b = basic_name(kind())) {
            take();
            t->kind = TypeAST::Basic;
            t->name = b;
            return t;
        }
        if (at(Tok::KwType)) {
            take();
            expect(Tok::LParen, "after 'type'");
            t->kind = TypeAST::TypeOf;
            t->name = expect(Tok::Ident, "class name in type(...)").sval;
            expect(Tok::RParen, "to close type(...)");
            return t;
        }
        if (at(Tok::KwArray)) {
            take();
            t->kind = TypeAST::Array;
            expect(Tok::LParen, "after 'array'");
            parse_array_element(*t);
            expect(Tok::RParen, "to close array element type");
            if (!at(Tok::LBracket))
                error_here("array type needs at least one '[]'");
            while (accept(Tok::LBracket)) {
                long long d = -1;
                std::string dn;
                if (at(Tok::IntLit)) d = take().ival;
                else if (at(Tok::Ident)) dn = take().sval;  // constant name
                t->dims.push_back(d);
                t->dim_names.push_back(dn);
                expect(Tok::RBracket, "to close array dimension");
            }
            return t;
        }
        if (at(Tok::Ident)) {
            t->kind = TypeAST::Named;
            t->name = take().sval;
            if (t->name == "DS" && accept(Tok::Dot))
                t->name += "." + expect(Tok::Ident, "after 'DS.'").sval;
            if (at(Tok::LParen)) {
                // parameterized class type: parsed, rejected later
                take();
                t->args.push_back(parse_type());
                while (accept(Tok::Comma)) t->args.push_back(parse_type());
                expect(Tok::RParen, "to close type argument list");
            }
            return t;
        }
        error_here("expected a type");
        t->kind = TypeAST::Named;
        t->name = "<error>";
        if (!at_end() && !at(Tok::Semi) && !at(Tok::RParen)) take();
        return t;
    }

    // Inside array(...): a type, or an expression denoting a class object.
    void parse_array_element(TypeAST& t) {
        switch (kind()) {
        case Tok::KwBoolean: case Tok::KwByte: case Tok::KwChar: case Tok::KwDouble:
        case Tok::KwInteger: case Tok::KwLong: case Tok::KwReal: case Tok::KwArray:
        case Tok::KwType: case Tok::At:
            t.elem = parse_type();
            return;
        case Tok::Ident:
            if (peek().kind == Tok::RParen || peek().kind == Tok::LParen) {
                t.elem = parse_type();
                return;
            }
            break;
        default:
            break;
        }
        t.elem_expr = parse_or();
    }

    // ---------------------------------------------------------------- expressions

    ExprP mk(ExprKind k, Span sp) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->span = sp;
        return e;
    }

    ExprP parse_expr() { return parse_assign(); }

    static bool assignable_shape(const Expr& e) {
        return e.kind == ExprKind::Ident || e.kind == ExprKind::Index ||
               e.kind == ExprKind::Member;
    }

    ExprP parse_assign() {
        ExprP lhs = parse_or();
        if (at(Tok::Assign)) {
            Span sp = cur().span;
            take();
            if (!assignable_shape(*lhs))
                error("left-hand side of '=' is not assignable", lhs->span);
            ExprP rhs = parse_assign();
            auto e = mk(ExprKind::Assign, sp);
            e->a = std::move(lhs);
            e->b = std::move(rhs);
            return e;
        }
        return lhs;
    }

    ExprP binary_chain(ExprP (Parser::*sub)(), std::initializer_list<Tok> ops) {
        ExprP l = (this->*sub)();
        for (;;) {
            bool matched = false;
            for (Tok t : ops)
                if (at(t)) {
                    Token op = take();
                    ExprP r = (this->*sub)();
                    auto e = mk(ExprKind::Binary, op.span);
                    e->op = op.kind;
                    e->a = std::move(l);
                    e->b = std::move(r);
                    l = std::move(e);
                    matched = true;
                    break;
                }
            if (!matched) return l;
        }
    }

    ExprP parse_or() { return binary_chain(&Parser::parse_xor, {Tok::KwOr}); }
    ExprP parse_xor() { return binary_chain(&Parser::parse_and, {Tok::KwXor}); }
    ExprP parse_and() { return binary_chain(&Parser::parse_rel, {Tok::KwAnd}); }

    static bool rel_op(Tok t) {
        return t == Tok::EqEq || t == Tok::Ne || t == Tok::Lt || t == Tok::Gt ||
               t == Tok::Le || t == Tok::Ge;
    }

    ExprP parse_rel() {
        ExprP l = parse_add();
        if (rel_op(kind())) {
            Token op = take();
            ExprP r = parse_add();
            auto e = mk(ExprKind::Binary, op.span);
            e->op = op.kind;
            e->a = std::move(l);
            e->b = std::move(r);
            l = std::move(e);
            while (rel_op(kind())) {
                Token op2 = take();
                error("non-associative operator chained", op2.span);
                ExprP r2 = parse_add();
                auto e2 = mk(ExprKind::Binary, op2.span);
                e2->op = op2.kind;
                e2->a = std::move(l);
                e2->b = std::move(r2);
                l = std::move(e2);
            }
        }
        return l;
    }

    ExprP parse_add() {
        return binary_chain(&Parser::parse_mult, {Tok::Plus, Tok::Minus});
    }
    ExprP parse_mult() {
        return binary_chain(&Parser::parse_bor, {Tok::Slash, Tok::Star, Tok::Percent});
    }
    ExprP parse_bor() { return binary_chain(&Parser::parse_bxor, {Tok::Pipe}); }
    ExprP parse_bxor() { return binary_chain(&Parser::parse_band, {Tok::Caret}); }
    ExprP parse_band() { return binary_chain(&Parser::parse_shift, {Tok::Amp}); }

    ExprP parse_shift() {
        ExprP l = parse_unary();
        if (at(Tok::Shl) || at(Tok::Shr)) {
            Token op = take();
            ExprP r = parse_unary();
            auto e = mk(ExprKind::Binary, op.span);
            e->op = op.kind;
            e->a = std::move(l);
            e->b = std::move(r);
            l = std::move(e);
            while (at(Tok::Shl) || at(Tok::Shr)) {
                Token op2 = take();
                error("non-associative operator chained", op2.span);
                ExprP r2 = parse_unary();
                auto e2 = mk(ExprKind::Binary, op2.span);
                e2->op = op2.kind;
                e2->a = std::move(l);
                e2->b = std::move(r2);
                l = std::move(e2);
            }
        }
        return l;
    }

    ExprP parse_unary() {
        switch (kind()) {
        case Tok::Tilde: case Tok::Plus: case Tok::Minus: case Tok::KwNot:
        case Tok::PlusPlus: case Tok::MinusMinus: {
            Token op = take();
            ExprP operand = parse_unary();
            auto e = mk(ExprKind::Unary, op.span);
            e->op = op.kind;
            e->a = std::move(operand);
            return e;
        }
        default:
            return parse_postfix();
        }
    }

    std::vector<ExprP> parse_args() {
        std::vector<ExprP> args;
        expect(Tok::LParen, "to open argument list");
        if (!at(Tok::RParen) && !at_end()) {
            args.push_back(parse_expr());
            while (accept(Tok::Comma)) args.push_back(parse_expr());
        }
        expect(Tok::RParen, "to close argument list");
        return args;
    }

    ExprP parse_postfix() {
        ExprP e;
        if (at(Tok::KwSuper)) {
            Span sp = take().span;
            expect(Tok::Dot, "after 'super'");
            Token sel = at(Tok::KwInit) ? take() : expect(Tok::Ident, "after 'super.'");
            auto c = mk(ExprKind::Call, sp);
            c->recv_super = true;
            c->name = sel.kind == Tok::KwInit ? "init" : sel.sval;
            c->args = parse_args();
            e = std::move(c);
        } else {
            e = parse_primary();
        }
        for (;;) {
            if (at(Tok::LBracket)) {
                Span sp = take().span;
                ExprP idx = parse_expr();
                expect(Tok::RBracket, "to close index");
                auto n = mk(ExprKind::Index, sp);
                n->a = std::move(e);
                n->b = std::move(idx);
                e = std::move(n);
            } else if (at(Tok::Dot)) {
                Span sp = take().span;
                Token sel = at(Tok::KwInit) ? take() : expect(Tok::Ident, "after '.'");
                std::string name = sel.kind == Tok::KwInit ? "init" : sel.sval;
                if (at(Tok::LParen)) {
                    auto n = mk(ExprKind::Call, sp);
                    n->a = std::move(e);
                    n->name = std::move(name);
                    n->args = parse_args();
                    e = std::move(n);
                } else {
                    auto n = mk(ExprKind::Member, sp);
                    n->a = std::move(e);
                    n->name = std::move(name);
                    e = std::move(n);
                }
            } else {
                return e;
            }
        }
    }

    ExprP parse_primary() {
        Span sp = cur().span;
        switch (kind()) {
        case Tok::IntLit: {
            auto e = mk(ExprKind::IntLit, sp);
            e->ival = take().ival;
            return e;
        }
        case Tok::LongLit: {
            auto e = mk(ExprKind::LongLit, sp);
            e->ival = take().ival;
            return e;
        }
        case Tok::ByteLit: {
            auto e = mk(ExprKind::ByteLit, sp);
            e->ival = take().ival;
            return e;
        }
        case Tok::RealLit: {
            auto e = mk(ExprKind::RealLit, sp);
            e->fval = take().fval;
            return e;
        }
        case Tok::DoubleLit: {
            auto e = mk(ExprKind::DoubleLit, sp);
            e->fval = take().fval;
            return e;
        }
        case Tok::CharLit: {
            auto e = mk(ExprKind::CharLit, sp);
            e->cval = take().cval;
            return e;
        }
        case Tok::StrLit: {
            auto e = mk(ExprKind::StrLit, sp);
            e->sval = take().sval;
            return e;
        }
        case Tok::KwTrue: case Tok::KwFalse: {
            auto e = mk(ExprKind::BoolLit, sp);
            e->bval = take().kind == Tok::KwTrue;
            return e;
        }
        case Tok::KwNil:
            take();
            return mk(ExprKind::NilLit, sp);
        case Tok::KwSelf:
            take();
            return mk(ExprKind::SelfX, sp);
        case Tok::KwResult:
            take();
            return mk(ExprKind::ResultX, sp);
        case Tok::KwException:
            take();
            return mk(ExprKind::ExceptionX, sp);
        case Tok::LParen: {
            take();
            ExprP e = parse_expr();
            expect(Tok::RParen, "to close parenthesized expression");
            return e;
        }
        case Tok::Hash: {
            take();
            auto e = mk(ExprKind::ArrayInit, sp);
            expect(Tok::LParen, "after '#'");
            if (!at(Tok::RParen) && !at_end()) {
                e->args.push_back(parse_or());
                while (accept(Tok::Comma)) e->args.push_back(parse_or());
            }
            expect(Tok::RParen, "to close array initializer");
            return e;
        }
        case Tok::KwBoolean: case Tok::KwByte: case Tok::KwChar: case Tok::KwDouble:
        case Tok::KwInteger: case Tok::KwLong: case Tok::KwReal: {
            auto e = mk(ExprKind::BasicTypeX, sp);
            e->name = basic_name(take().kind);
            return e;
        }
        case Tok::KwArray: {
            auto e = mk(ExprKind::ArrayTypeX, sp);
            e->type_ast = parse_type();
            return e;
        }
        case Tok::Ident: {
            Token id = take();
            if (at(Tok::LParen)) {
                auto e = mk(ExprKind::Call, sp);
                e->name = id.sval;   // bare send to self
                e->args = parse_args();
                return e;
            }
            auto e = mk(ExprKind::Ident, sp);
            e->name = id.sval;
            return e;
        }
        default:
            error_here(std::string("expected an expression, found ") + tok_name(kind()));
            if (!at_end() && !at(Tok::Semi) && !at(Tok::KwEnd) && !at(Tok::RParen) &&
                !at(Tok::RBracket) && !at(Tok::Comma))
                take();
            return mk(ExprKind::NilLit, sp);
        }
    }

    // ---------------------------------------------------------------- statements

    StmtP mks(StmtKind k, Span sp) {
        auto s = std::make_unique<Stmt>();
        s->kind = k;
        s->span = sp;
        return s;
    }

    bool statement_boundary() const {
        switch (kind()) {
        case Tok::KwEnd: case Tok::KwElse: case Tok::KwEndif: case Tok::KwUntil:
        case Tok::KwOtherwise: case Tok::Eof:
            return true;
        default:
            return false;
        }
    }

    void sync_statement() {
        while (!statement_boundary() && !at(Tok::Semi)) {
            // avoid swallowing an entire class on a bad statement
            if (at(Tok::KwPublic) || at(Tok::KwPrivate) || at(Tok::KwSubclass) ||
                at(Tok::KwProc) || at(Tok::KwClass) || at(Tok::KwObject))
                return;
            take();
        }
        accept(Tok::Semi);
    }

    std::vector<StmtP> parse_statement_list() {
        std::vector<StmtP> list;
        while (!statement_boundary()) {
            size_t before = pos;
            list.push_back(parse_statement());
            if (pos == before) {   // no progress: bail out of the list
                take();
            }
        }
        return list;
    }

    std::vector<StmtP> parse_unstat_block() {
        std::vector<StmtP> list;
        if (accept(Tok::KwBegin)) {
            list = parse_statement_list();
            expect(Tok::KwEnd, "to close begin-end block");
        } else {
            list.push_back(parse_statement());
        }
        return list;
    }

    StmtP parse_statement() {
        Span sp = cur().span;
        switch (kind()) {
        case Tok::Semi:
            take();
            return mks(StmtKind::Empty, sp);
        case Tok::KwVar: {
            take();
            auto s = mks(StmtKind::VarDecl, sp);
            s->name = expect(Tok::Ident, "in variable declaration").sval;
            expect(Tok::Colon, "after variable name");
            s->var_type = parse_type();
            s->expanded = s->var_type->expanded;
            if (accept(Tok::Assign)) s->init = parse_array_init_or_expr();
            expect(Tok::Semi, "after variable declaration");
            return s;
        }
        case Tok::KwReturn: {
            take();
            auto s = mks(StmtKind::Return, sp);
            if (!at(Tok::Semi)) s->expr = parse_expr();
            expect(Tok::Semi, "after return");
            return s;
        }
        case Tok::KwBreak: {
            take();
            expect(Tok::Semi, "after break");
            return mks(StmtKind::Break, sp);
        }
        case Tok::KwIf: {
            take();
            auto s = mks(StmtKind::If, sp);
            s->expr = parse_or();
            expect(Tok::KwThen, "in if statement");
            s->body = parse_statement_list();
            if (accept(Tok::KwElse)) {
                s->has_else = true;
                s->else_body = parse_statement_list();
            }
            expect(Tok::KwEndif, "to close if statement");
            return s;
        }
        case Tok::KwWhile: {
            take();
            auto s = mks(StmtKind::While, sp);
            s->expr = parse_expr();
            expect(Tok::KwDo, "in while statement");
            s->body = parse_unstat_block();
            return s;
        }
        case Tok::KwRepeat: {
            take();
            auto s = mks(StmtKind::Repeat, sp);
            s->body = parse_statement_list();
            expect(Tok::KwUntil, "to close repeat statement");
            s->expr = parse_expr();
            expect(Tok::Semi, "after repeat-until condition");
            return s;
        }
        case Tok::KwLoop: {
            take();
            auto s = mks(StmtKind::Loop, sp);
            s->body = parse_statement_list();
            expect(Tok::KwEnd, "to close loop statement");
            return s;
        }
        case Tok::KwFor: {
            take();
            auto s = mks(StmtKind::For, sp);
            s->for_var = expect(Tok::Ident, "as for-loop variable").sval;
            if (accept(Tok::Colon)) {
                s->for_declares = true;
                s->for_type = parse_type();
            }
            expect(Tok::Assign, "in for statement");
            s->from = parse_or();
            expect(Tok::KwTo, "in for statement");
            s->to = parse_or();
            expect(Tok::KwDo, "in for statement");
            s->body = parse_unstat_block();
            return s;
        }
        case Tok::KwCase: {
            take();
            auto s = mks(StmtKind::Case, sp);
            s->expr = parse_expr();
            expect(Tok::KwOf, "in case statement");
            while (!at(Tok::KwOtherwise) && !at(Tok::KwEnd) && !at_end()) {
                size_t before = pos;
                CaseArm arm;
                arm.labels.push_back(parse_or());
                while (accept(Tok::Comma)) arm.labels.push_back(parse_or());
                expect(Tok::Colon, "after case labels");
                arm.body = parse_unstat_block();
                s->arms.push_back(std::move(arm));
                if (pos == before) take();
            }
            if (accept(Tok::KwOtherwise)) {
                s->has_otherwise = true;
                s->otherwise = parse_unstat_block();
            }
            expect(Tok::KwEnd, "to close case statement");
            return s;
        }
        case Tok::KwTry: {
            take();
            auto s = mks(StmtKind::Try, sp);
            expect(Tok::LParen, "after 'try'");
            s->expr = parse_expr();
            expect(Tok::RParen, "after try catch object");
            s->body = parse_statement_list();
            expect(Tok::KwEnd, "to close try statement");
            return s;
        }
        default: {
            ExprP e = parse_expr();
            if (at(Tok::Hash)) {
                take();
                auto s = mks(StmtKind::InitCall, sp);
                s->expr = std::move(e);
                if (!at(Tok::KwInit)) {
                    error_here("expected 'init' after '#'");
                } else {
                    take();
                }
                s->args = parse_args();
                expect(Tok::Semi, "after init call");
                return s;
            }
            auto s = mks(StmtKind::ExprStat, sp);
            bool ok = e->kind == ExprKind::Assign || e->kind == ExprKind::Call ||
                      (e->kind == ExprKind::Unary &&
                       (e->op == Tok::PlusPlus || e->op == Tok::MinusMinus));
            if (!ok) error("expression cannot be used as a statement", e->span);
            s->expr = std::move(e);
            expect(Tok::Semi, "after statement");
            return s;
        }
        }
    }

    ExprP parse_array_init_or_expr() {
        return parse_expr();   // #(...) is a primary, so this covers both
    }

    // ---------------------------------------------------------------- declarations

    std::vector<ParamAST> parse_params() {
        std::vector<ParamAST> params;
        expect(Tok::LParen, "to open parameter list");
        while (!at(Tok::RParen) && !at_end()) {
            std::vector<Token> names;
            names.push_back(expect(Tok::Ident, "as parameter name"));
            while (accept(Tok::Comma))
                names.push_back(expect(Tok::Ident, "as parameter name"));
            expect(Tok::Colon, "after parameter names");
            bool variadic = accept(Tok::Ellipsis);
            TypeP ty = parse_type();
            for (size_t i = 0; i < names.size(); i++) {
                ParamAST p;
                p.name = names[i].sval;
                p.span = names[i].span;
                p.variadic = variadic;
                p.type = i + 1 == names.size() ? std::move(ty) : clone(*ty);
                params.push_back(std::move(p));
            }
            if (!accept(Tok::Semi)) break;
        }
        expect(Tok::RParen, "to close parameter list");
        return params;
    }

    // deep copy for multi-name declarations sharing one written type
    static TypeP clone(const TypeAST& t) {
        auto c = std::make_unique<TypeAST>();
        c->kind = t.kind;
        c->span = t.span;
        c->name = t.name;
        c->dims = t.dims;
        c->expanded = t.expanded;
        for (auto& a : t.args) c->args.push_back(clone(*a));
        if (t.elem) c->elem = clone(*t.elem);
        // elem_expr is not cloned; declarations with expression elements are
        // single-name in practice and the checker would reject sharing anyway
        return c;
    }

    MethodAST parse_method(Visibility vis) {
        MethodAST m;
        m.vis = vis;
        m.span = cur().span;
        m.is_abstract = accept(Tok::KwAbstract);
        expect(Tok::KwProc, "to start method");
        if (at(Tok::KwInit)) {
            take();
            m.name = "init";
        } else {
            m.name = expect(Tok::Ident, "as method name").sval;
        }
        m.params = parse_params();
        if (at(Tok::LParen) && peek().kind == Tok::KwException) {
            take();
            take();
            expect(Tok::Colon, "in exception clause");
            m.exc_type = parse_type();
            expect(Tok::RParen, "to close exception clause");
        }
        if (accept(Tok::Colon)) m.ret_type = parse_type();
        if (at(Tok::KwAssert)) {
            take();
            m.assertion.present = true;
            m.assertion.span = cur().span;
            if (accept(Tok::KwBefore)) {
                m.assertion.before = parse_or();
                expect(Tok::Semi, "after before-assertion");
            }
            while (at(Tok::KwVar)) {
                m.assertion.vars.push_back(parse_statement());
            }
            if (accept(Tok::KwAfter)) {
                m.assertion.after = parse_or();
                expect(Tok::Semi, "after after-assertion");
            }
            expect(Tok::KwEnd, "to close assertion clause");
        }
        if (m.is_abstract) {
            accept(Tok::Semi);
            return m;
        }
        if (at(Tok::KwVar)) {
            take();
            for (;;) {
                std::vector<Token> names;
                names.push_back(expect(Tok::Ident, "as local variable name"));
                while (accept(Tok::Comma))
                    names.push_back(expect(Tok::Ident, "as local variable name"));
                expect(Tok::Colon, "after local variable names");
                TypeP ty = parse_type();
                ExprP init;
                if (accept(Tok::Assign)) init = parse_array_init_or_expr();
                expect(Tok::Semi, "after local variable declaration");
                for (size_t i = 0; i < names.size(); i++) {
                    VarDeclAST v;
                    v.name = names[i].sval;
                    v.span = names[i].span;
                    v.type = i + 1 == names.size() ? std::move(ty) : clone(*ty);
                    v.expanded = v.type->expanded;
                    if (i + 1 == names.size()) v.init = std::move(init);
                    m.locals.push_back(std::move(v));
                }
                if (!(at(Tok::Ident) &&
                      (peek().kind == Tok::Colon || peek().kind == Tok::Comma)))
                    break;
            }
        }
        expect(Tok::KwBegin, "to open method body");
        m.body = parse_statement_list();
        expect(Tok::KwEnd, "to close method body");
        m.has_body = true;
        return m;
    }

    ConstAST parse_const_item(Visibility vis) {
        ConstAST c;
        c.vis = vis;
        c.span = cur().span;
        c.name = expect(Tok::Ident, "as constant name").sval;
        if (accept(Tok::Colon)) {
            if (const char* b = basic_name(kind())) {
                take();
                c.type = std::make_unique<TypeAST>();
                c.type->kind = TypeAST::Basic;
                c.type->name = b;
            } else if (at(Tok::Ident) && cur().sval == "String") {
                take();
                c.type = std::make_unique<TypeAST>();
                c.type->kind = TypeAST::Named;
                c.type->name = "String";
            } else {
                error_here("constant type must be a basic type or String");
                parse_type();
            }
        }
        expect(Tok::Assign, "in constant declaration");
        c.value = parse_or();
        return c;
    }

    void parse_obj_members(ClassObjAST& obj, Visibility vis) {
        for (;;) {
            switch (kind()) {
            case Tok::KwProc: case Tok::KwAbstract:
                obj.methods.push_back(parse_method(vis));
                break;
            case Tok::KwConst: {
                take();
                obj.consts.push_back(parse_const_item(vis));
                while (accept(Tok::Comma)) obj.consts.push_back(parse_const_item(vis));
                expect(Tok::Semi, "after constant declaration");
                break;
            }
            case Tok::KwEnum: {
                take();
                EnumAST en;
                en.vis = vis;
                en.span = cur().span;
                expect(Tok::LParen, "after 'enum'");
                do {
                    std::string n = expect(Tok::Ident, "as enum constant").sval;
                    ExprP v;
                    if (accept(Tok::Assign)) v = parse_or();
                    en.items.emplace_back(std::move(n), std::move(v));
                } while (accept(Tok::Comma));
                expect(Tok::RParen, "to close enum");
                expect(Tok::Semi, "after enum declaration");
                obj.enums.push_back(std::move(en));
                break;
            }
            case Tok::KwVar: {
                if (vis != Visibility::Private) {
                    error_here("variables are only allowed in the private section");
                }
                take();
                for (;;) {
                    std::vector<Token> names;
                    names.push_back(expect(Tok::Ident, "as variable name"));
                    while (accept(Tok::Comma))
                        names.push_back(expect(Tok::Ident, "as variable name"));
                    expect(Tok::Colon, "after variable names");
                    TypeP ty = parse_type();
                    ExprP init;
                    if (accept(Tok::Assign)) init = parse_array_init_or_expr();
                    expect(Tok::Semi, "after variable declaration");
                    for (size_t i = 0; i < names.size(); i++) {
                        VarDeclAST v;
                        v.name = names[i].sval;
                        v.span = names[i].span;
                        v.type = i + 1 == names.size() ? std::move(ty) : clone(*ty);
                        v.expanded = v.type->expanded;
                        if (i + 1 == names.size()) v.init = std::move(init);
                        obj.vars.push_back(std::move(v));
                    }
                    if (!(at(Tok::Ident) &&
                          (peek().kind == Tok::Colon || peek().kind == Tok::Comma)))
                        break;
                }
                break;
            }
            default:
                return;
            }
        }
    }

    ClassObjAST parse_class_object() {
        ClassObjAST obj;
        obj.span = cur().span;
        expect(Tok::KwObject, "to start class object");
        obj.name = expect(Tok::Ident, "as class object name").sval;
        while (at(Tok::KwProc) || at(Tok::KwAbstract))
            obj.methods.push_back(parse_method(Visibility::Constructor));
        if (accept(Tok::KwPublic)) {
            expect(Tok::Colon, "after 'public'");
            parse_obj_members(obj, Visibility::Public);
        }
        if (accept(Tok::KwPrivate)) {
            expect(Tok::Colon, "after 'private'");
            parse_obj_members(obj, Visibility::Private);
        }
        expect(Tok::KwEnd, "to close class object");
        return obj;
    }

    void parse_class_members(ClassAST& cls) {
        while (at(Tok::KwProc) || at(Tok::KwAbstract))
            cls.methods.push_back(parse_method(Visibility::Constructor));
        if (accept(Tok::KwPublic)) {
            expect(Tok::Colon, "after 'public'");
            while (at(Tok::KwProc) || at(Tok::KwAbstract))
                cls.methods.push_back(parse_method(Visibility::Public));
        }
        if (accept(Tok::KwSubclass)) {
            expect(Tok::Colon, "after 'subclass'");
            while (at(Tok::KwProc) || at(Tok::KwAbstract))
                cls.methods.push_back(parse_method(Visibility::Subclass));
        }
        if (accept(Tok::KwPrivate)) {
            expect(Tok::Colon, "after 'private'");
            for (;;) {
                if (at(Tok::KwProc) || at(Tok::KwAbstract)) {
                    cls.methods.push_back(parse_method(Visibility::Private));
                } else if (at(Tok::KwVar)) {
                    take();
                    for (;;) {
                        std::vector<Token> names;
                        names.push_back(expect(Tok::Ident, "as instance variable name"));
                        while (accept(Tok::Comma))
                            names.push_back(expect(Tok::Ident, "as instance variable name"));
                        expect(Tok::Colon, "after instance variable names");
                        TypeP ty = parse_type();
                        if (at(Tok::Assign)) {
                            error_here("instance variables cannot have initializers");
                            take();
                            parse_array_init_or_expr();
                        }
                        expect(Tok::Semi, "after instance variable declaration");
                        for (size_t i = 0; i < names.size(); i++) {
                            VarDeclAST v;
                            v.name = names[i].sval;
                            v.span = names[i].span;
                            v.type = i + 1 == names.size() ? std::move(ty) : clone(*ty);
                            v.expanded = v.type->expanded;
                            cls.vars.push_back(std::move(v));
                        }
                        if (!(at(Tok::Ident) &&
                              (peek().kind == Tok::Colon || peek().kind == Tok::Comma)))
                            break;
                    }
                } else {
                    break;
                }
            }
        }
    }

    void parse_program(ProgramAST& out) {
        while (!at_end()) {
            size_t before = pos;
            if (at(Tok::KwObject)) {
                ClassObjAST obj = parse_class_object();
                bool abs = false, refl = false;
                size_t save = pos;
                while (at(Tok::KwAbstract) || at(Tok::KwReflective)) {
                    if (take().kind == Tok::KwAbstract) abs = true;
                    else refl = true;
                }
                if (at(Tok::KwClass) && peek().kind == Tok::Ident &&
                    peek().sval == obj.name) {
                    ClassAST cls = parse_class(abs, refl);
                    cls.object = std::make_unique<ClassObjAST>(std::move(obj));
                    out.decl_order.push_back(cls.name);
                    out.classes.push_back(std::move(cls));
                } else {
                    pos = save;   // modifiers belonged to an unrelated class
                    out.decl_order.push_back(obj.name);
                    out.objects.push_back(std::move(obj));
                }
            } else if (at(Tok::KwShell)) {
                take();
                expect(Tok::KwClass, "after 'shell'");
                ClassAST cls;
                cls.file = src.name;
                cls.span = cur().span;
                cls.is_shell = true;
                cls.name = expect(Tok::Ident, "as shell class name").sval;
                expect(Tok::LParen, "after shell class name");
                cls.shell_base = parse_type();
                expect(Tok::RParen, "to close shell base type");
                if (accept(Tok::KwSubclassOf))
                    cls.super_name = expect(Tok::Ident, "as superclass name").sval;
                parse_class_members(cls);
                expect(Tok::KwEnd, "to close shell class");
                out.decl_order.push_back(cls.name);
                out.classes.push_back(std::move(cls));
            } else if (at(Tok::KwClass) || at(Tok::KwAbstract) || at(Tok::KwReflective)) {
                bool abs = false, refl = false;
                while (at(Tok::KwAbstract) || at(Tok::KwReflective)) {
                    if (take().kind == Tok::KwAbstract) abs = true;
                    else refl = true;
                }
                ClassAST cls = parse_class(abs, refl);
                out.decl_order.push_back(cls.name);
                out.classes.push_back(std::move(cls));
            } else {
                error_here(std::string("expected a class declaration, found ") +
                           tok_name(kind()));
                while (!at_end() && !at(Tok::KwClass) && !at(Tok::KwObject) &&
                       !at(Tok::KwShell) && !at(Tok::KwAbstract) &&
                       !at(Tok::KwReflective))
                    take();
            }
            if (pos == before) take();
        }
    }

    ClassAST parse_class(bool abs, bool refl) {
        ClassAST cls;
        cls.file = src.name;
        cls.is_abstract = abs;
        cls.is_reflective = refl;
        cls.span = cur().span;
        expect(Tok::KwClass, "to start class");
        cls.name = expect(Tok::Ident, "as class name").sval;
        if (accept(Tok::LParen)) {
            do {
                cls.type_params.push_back(expect(Tok::Ident, "as type parameter").sval);
                if (accept(Tok::KwSubtypeOf)) parse_type();
            } while (accept(Tok::Comma));
            expect(Tok::RParen, "to close type parameter list");
        }
        if (accept(Tok::KwSubclassOf)) {
            cls.super_span = cur().span;
            cls.super_name = expect(Tok::Ident, "as superclass name").sval;
            if (accept(Tok::LParen)) {   // parameterized superclass
                do {
                    parse_type();
                } while (accept(Tok::Comma));
                expect(Tok::RParen, "to close superclass type arguments");
            }
        }
        parse_class_members(cls);
        expect(Tok::KwEnd, "to close class");
        return cls;
    }
};

} // namespace

ParseResult parse_tokens(const SourceFile& src, const std::vector<Token>& toks) {
    Parser p(src, toks);
    ParseResult r;
    p.parse_program(r.program);
    r.diags = std::move(p.diags);
    return r;
}

ParseResult parse(const SourceFile& src) {
    LexResult lr = lex(src);
    ParseResult r = parse_tokens(src, lr.tokens);
    r.diags.insert(r.diags.begin(), lr.diags.begin(), lr.diags.end());
    return r;
}

} // namespace green
