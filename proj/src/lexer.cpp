#include "green/token.hpp"

#include <cerrno>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

namespace green {

namespace {

const std::map<std::string, Tok>& keyword_table() {
    static const std::map<std::string, Tok> kw = {
        {"abstract", Tok::KwAbstract}, {"after", Tok::KwAfter}, {"and", Tok::KwAnd},
        {"array", Tok::KwArray}, {"assert", Tok::KwAssert}, {"assertion", Tok::KwAssert},
        {"before", Tok::KwBefore}, {"begin", Tok::KwBegin}, {"boolean", Tok::KwBoolean},
        {"break", Tok::KwBreak}, {"byte", Tok::KwByte}, {"case", Tok::KwCase},
        {"char", Tok::KwChar}, {"class", Tok::KwClass}, {"const", Tok::KwConst},
        {"do", Tok::KwDo}, {"double", Tok::KwDouble}, {"else", Tok::KwElse},
        {"end", Tok::KwEnd}, {"endif", Tok::KwEndif}, {"enum", Tok::KwEnum},
        {"exception", Tok::KwException}, {"false", Tok::KwFalse}, {"for", Tok::KwFor},
        {"if", Tok::KwIf}, {"init", Tok::KwInit}, {"integer", Tok::KwInteger},
        {"long", Tok::KwLong}, {"loop", Tok::KwLoop}, {"nil", Tok::KwNil},
        {"not", Tok::KwNot}, {"object", Tok::KwObject}, {"of", Tok::KwOf},
        {"or", Tok::KwOr}, {"otherwise", Tok::KwOtherwise}, {"private", Tok::KwPrivate},
        {"proc", Tok::KwProc}, {"public", Tok::KwPublic}, {"real", Tok::KwReal},
        {"reflective", Tok::KwReflective}, {"repeat", Tok::KwRepeat},
        {"result", Tok::KwResult}, {"return", Tok::KwReturn}, {"self", Tok::KwSelf},
        {"shell", Tok::KwShell}, {"subclass", Tok::KwSubclass},
        {"subclassOf", Tok::KwSubclassOf}, {"subtypeOf", Tok::KwSubtypeOf},
        {"super", Tok::KwSuper}, {"then", Tok::KwThen}, {"to", Tok::KwTo},
        {"true", Tok::KwTrue}, {"try", Tok::KwTry}, {"type", Tok::KwType},
        {"until", Tok::KwUntil}, {"var", Tok::KwVar}, {"while", Tok::KwWhile},
        {"xor", Tok::KwXor},
    };
    return kw;
}

struct Lexer {
    const SourceFile& src;
    const std::string& s;
    size_t pos = 0;
    uint32_t line = 1, col = 1;
    LexResult out;
    size_t tok_start = 0;        // byte offset where the current token begins
    uint32_t tok_line = 1, tok_col = 1;
    std::string lead;            // trivia accumulated since the previous token
    std::map<std::string, std::string> ident_case;   // lowercased -> first spelling
    std::set<std::string> case_warned;

    explicit Lexer(const SourceFile& f) : src(f), s(f.text) {}

    bool at_end() const { return pos >= s.size(); }
    char peek(size_t k = 0) const { return pos + k < s.size() ? s[pos + k] : '\0'; }

    // Advance one byte, keeping line/col in Unicode scalar values.
    void bump() {
        char c = s[pos++];
        if (c == '\n') {
            line++;
            col = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            col++;   // count the first byte of each scalar value only
        }
    }

    void error(const std::string& code, const std::string& msg, Span sp) {
        out.diags.push_back({Severity::Error, src.name, sp, code, msg});
    }
    void warning(const std::string& code, const std::string& msg, Span sp) {
        out.diags.push_back({Severity::Warning, src.name, sp, code, msg});
    }

    Span here() const {
        return Span{static_cast<uint32_t>(pos), 1, line, col};
    }
    Span token_span() const {
        return Span{static_cast<uint32_t>(tok_start),
                    static_cast<uint32_t>(pos - tok_start), tok_line, tok_col};
    }

    void push(Tok kind, Token t = {}) {
        t.kind = kind;
        t.lexeme = s.substr(tok_start, pos - tok_start);
        t.lead = std::move(lead);
        lead.clear();
        t.span = token_span();
        out.tokens.push_back(std::move(t));
    }

    void skip_trivia() {
        size_t start = pos;
        for (;;) {
            if (at_end()) break;
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') bump();
            } else if (c == '/' && peek(1) == '*') {
                Span sp = here();
                bump();
                bump();
                int depth = 1;
                while (depth > 0) {
                    if (at_end()) {
                        error("unterminated-comment", "comment is not terminated", sp);
                        break;
                    }
                    if (peek() == '/' && peek(1) == '*') {
                        bump(); bump(); depth++;
                    } else if (peek() == '*' && peek(1) == '/') {
                        bump(); bump(); depth--;
                    } else {
                        bump();
                    }
                }
            } else {
                break;
            }
        }
        lead += s.substr(start, pos - start);
    }

    static bool ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool ident_char(char c) {
        return ident_start(c) || (c >= '0' && c <= '9');
    }
    static bool digit(char c) { return c >= '0' && c <= '9'; }
    static bool hex_digit(char c) {
        return digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
    }

    void lex_ident() {
        while (ident_char(peek())) bump();
        std::string name = s.substr(tok_start, pos - tok_start);
        auto& kw = keyword_table();
        auto it = kw.find(name);
        if (it != kw.end()) {
            push(it->second);
            return;
        }
        std::string low;
        for (char c : name) low += (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c;
        auto [prev, fresh] = ident_case.emplace(low, name);
        if (!fresh && prev->second != name && !case_warned.count(name)) {
            case_warned.insert(name);
            warning("case-collision",
                    "identifier '" + name + "' differs only in case from '" +
                        prev->second + "'",
                    token_span());
        }
        Token t;
        t.sval = name;
        push(Tok::Ident, std::move(t));
    }

    void lex_number() {
        while (digit(peek())) bump();
        bool has_frac = false, has_exp = false;
        if (peek() == '.' && digit(peek(1))) {
            has_frac = true;
            bump();
            while (digit(peek())) bump();
        }
        if ((peek() == 'e' || peek() == 'E')) {
            size_t k = 1;
            if (peek(1) == '+' || peek(1) == '-') k = 2;
            if (digit(peek(k))) {
                has_exp = true;
                bump();
                if (peek() == '+' || peek() == '-') bump();
                while (digit(peek())) bump();
            }
        }
        char suffix = '\0';
        if (peek() == 'b' || peek() == 'i' || peek() == 'L' || peek() == 'r' ||
            peek() == 'd') {
            suffix = peek();
            bump();
        }
        bool bad = false;
        if (ident_char(peek())) {
            Span sp = token_span();
            while (ident_char(peek())) bump();
            sp.length = static_cast<uint32_t>(pos - tok_start);
            error("bad-number", "malformed numeric literal '" +
                                    s.substr(tok_start, pos - tok_start) + "'", sp);
            bad = true;
        }
        std::string text = s.substr(tok_start, pos - tok_start);
        std::string digits = suffix ? text.substr(0, text.size() - 1) : text;
        Token t;
        if (bad) {
            push(Tok::IntLit, std::move(t));
            return;
        }
        bool is_float = has_frac || has_exp;
        if (is_float && (suffix == 'b' || suffix == 'i' || suffix == 'L')) {
            error("bad-number", "integer suffix on a non-integer literal", token_span());
            push(Tok::IntLit, std::move(t));
            return;
        }
        if (is_float || suffix == 'r' || suffix == 'd') {
            errno = 0;
            char* endp = nullptr;
            double v = std::strtod(digits.c_str(), &endp);
            if (errno == ERANGE) {
                error("bad-number", "floating literal out of range", token_span());
            }
            if (suffix == 'd') {
                t.fval = v;
                push(Tok::DoubleLit, std::move(t));
            } else {
                t.fval = static_cast<float>(v);
                push(Tok::RealLit, std::move(t));
            }
            return;
        }
        errno = 0;
        unsigned long long v = std::strtoull(digits.c_str(), nullptr, 10);
        if (suffix == 'b') {
            if (errno == ERANGE || v > 255) {
                error("bad-number", "byte literal out of range 0..255", token_span());
                v = 0;
            }
            t.ival = static_cast<long long>(v);
            push(Tok::ByteLit, std::move(t));
        } else if (suffix == 'L') {
            if (errno == ERANGE || v > 9223372036854775807ULL) {
                error("bad-number", "long literal out of range", token_span());
                v = 0;
            }
            t.ival = static_cast<long long>(v);
            push(Tok::LongLit, std::move(t));
        } else {
            if (errno == ERANGE || v > 2147483647ULL) {
                error("bad-number", "integer literal out of range", token_span());
                v = 0;
            }
            t.ival = static_cast<long long>(v);
            push(Tok::IntLit, std::move(t));
        }
    }

    // Decodes one escape sequence after the backslash has been seen (pos at '\\').
    // Returns false on a bad escape (an error is reported, scanning continues).
    bool decode_escape(unsigned char& out_ch) {
        Span sp = here();
        bump();   // backslash
        char c = peek();
        switch (c) {
        case 'n': out_ch = '\n'; bump(); return true;
        case 't': out_ch = '\t'; bump(); return true;
        case 'r': out_ch = '\r'; bump(); return true;
        case '0': out_ch = '\0'; bump(); return true;
        case '\\': out_ch = '\\'; bump(); return true;
        case '\'': out_ch = '\''; bump(); return true;
        case '"': out_ch = '"'; bump(); return true;
        case 'x': {
            bump();
            if (hex_digit(peek()) && hex_digit(peek(1))) {
                auto hv = [](char h) -> int {
                    if (h >= '0' && h <= '9') return h - '0';
                    if (h >= 'a' && h <= 'f') return h - 'a' + 10;
                    return h - 'A' + 10;
                };
                out_ch = static_cast<unsigned char>(hv(peek()) * 16 + hv(peek(1)));
                bump();
                bump();
                return true;
            }
            error("bad-escape", "\\x expects two hex digits", sp);
            return false;
        }
        default:
            error("bad-escape", std::string("unknown escape '\\") +
                                    (c ? std::string(1, c) : "<eof>") + "'", sp);
            if (!at_end() && c != '\n') bump();
            return false;
        }
    }

    void lex_char() {
        Span sp = here();
        bump();   // opening quote
        unsigned char value = 0;
        bool have = false;
        if (at_end() || peek() == '\n') {
            error("bad-char", "character literal is not terminated", sp);
            push(Tok::CharLit);
            return;
        }
        if (peek() == '\'') {
            bump();
            error("bad-char", "empty character literal", sp);
            push(Tok::CharLit);
            return;
        }
        if (peek() == '\\') {
            have = decode_escape(value);
        } else {
            value = static_cast<unsigned char>(peek());
            have = true;
            bump();
        }
        if (peek() == '\'') {
            bump();
        } else {
            // too many characters or unterminated; recover to quote or line end
            while (!at_end() && peek() != '\'' && peek() != '\n') bump();
            if (peek() == '\'') bump();
            error("bad-char", "character literal must contain exactly one character", sp);
        }
        Token t;
        t.cval = have ? value : 0;
        push(Tok::CharLit, std::move(t));
    }

    void lex_string() {
        Span sp = here();
        bump();   // opening quote
        std::string value;
        for (;;) {
            if (at_end() || peek() == '\n') {
                error("unterminated-string", "string literal is not terminated", sp);
                break;
            }
            if (peek() == '"') {
                bump();
                break;
            }
            if (peek() == '\\') {
                unsigned char c = 0;
                if (decode_escape(c)) value += static_cast<char>(c);
            } else {
                value += peek();
                bump();
            }
        }
        Token t;
        t.sval = std::move(value);
        push(Tok::StrLit, std::move(t));
    }

    void punct(Tok k, int nbytes) {
        for (int i = 0; i < nbytes; i++) bump();
        push(k);
    }

    LexResult run() {
        for (;;) {
            skip_trivia();
            tok_start = pos;
            tok_line = line;
            tok_col = col;
            if (at_end()) {
                push(Tok::Eof);
                break;
            }
            char c = peek();
            if (ident_start(c)) {
                lex_ident();
            } else if (digit(c)) {
                lex_number();
            } else if (c == '\'') {
                lex_char();
            } else if (c == '"') {
                lex_string();
            } else {
                switch (c) {
                case '+':
                    if (peek(1) == '+') punct(Tok::PlusPlus, 2);
                    else punct(Tok::Plus, 1);
                    break;
                case '-':
                    if (peek(1) == '-') punct(Tok::MinusMinus, 2);
                    else punct(Tok::Minus, 1);
                    break;
                case '*': punct(Tok::Star, 1); break;
                case '/': punct(Tok::Slash, 1); break;
                case '%': punct(Tok::Percent, 1); break;
                case '&': punct(Tok::Amp, 1); break;
                case '|': punct(Tok::Pipe, 1); break;
                case '^': punct(Tok::Caret, 1); break;
                case '~': punct(Tok::Tilde, 1); break;
                case '<':
                    if (peek(1) == '<') punct(Tok::Shl, 2);
                    else if (peek(1) == '=') punct(Tok::Le, 2);
                    else if (peek(1) == '>') punct(Tok::Ne, 2);
                    else punct(Tok::Lt, 1);
                    break;
                case '>':
                    if (peek(1) == '>') punct(Tok::Shr, 2);
                    else if (peek(1) == '=') punct(Tok::Ge, 2);
                    else punct(Tok::Gt, 1);
                    break;
                case '=':
                    if (peek(1) == '=') punct(Tok::EqEq, 2);
                    else punct(Tok::Assign, 1);
                    break;
                case '(': punct(Tok::LParen, 1); break;
                case ')': punct(Tok::RParen, 1); break;
                case '[': punct(Tok::LBracket, 1); break;
                case ']': punct(Tok::RBracket, 1); break;
                case '.':
                    if (peek(1) == '.' && peek(2) == '.') punct(Tok::Ellipsis, 3);
                    else punct(Tok::Dot, 1);
                    break;
                case ',': punct(Tok::Comma, 1); break;
                case ';': punct(Tok::Semi, 1); break;
                case ':': punct(Tok::Colon, 1); break;
                case '#': punct(Tok::Hash, 1); break;
                case '@': punct(Tok::At, 1); break;
                default: {
                    Span sp = here();
                    // consume one full scalar value so the error is reported once
                    bump();
                    while (!at_end() &&
                           (static_cast<unsigned char>(peek()) & 0xC0) == 0x80)
                        bump();
                    error("bad-char", "unexpected character in input", sp);
                    lead += s.substr(tok_start, pos - tok_start);
                    continue;
                }
                }
            }
        }
        return std::move(out);
    }
};

} // namespace

LexResult lex(const SourceFile& src) {
    Lexer lx(src);
    return lx.run();
}

bool is_keyword(Tok t) {
    return t >= Tok::KwAbstract && t <= Tok::KwXor;
}

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::Eof: return "end of file";
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::LongLit: return "long literal";
    case Tok::ByteLit: return "byte literal";
    case Tok::RealLit: return "real literal";
    case Tok::DoubleLit: return "double literal";
    case Tok::CharLit: return "char literal";
    case Tok::StrLit: return "string literal";
    case Tok::KwAbstract: return "'abstract'";
    case Tok::KwAfter: return "'after'";
    case Tok::KwAnd: return "'and'";
    case Tok::KwArray: return "'array'";
    case Tok::KwAssert: return "'assert'";
    case Tok::KwBefore: return "'before'";
    case Tok::KwBegin: return "'begin'";
    case Tok::KwBoolean: return "'boolean'";
    case Tok::KwBreak: return "'break'";
    case Tok::KwByte: return "'byte'";
    case Tok::KwCase: return "'case'";
    case Tok::KwChar: return "'char'";
    case Tok::KwClass: return "'class'";
    case Tok::KwConst: return "'const'";
    case Tok::KwDo: return "'do'";
    case Tok::KwDouble: return "'double'";
    case Tok::KwElse: return "'else'";
    case Tok::KwEnd: return "'end'";
    case Tok::KwEndif: return "'endif'";
    case Tok::KwEnum: return "'enum'";
    case Tok::KwException: return "'exception'";
    case Tok::KwFalse: return "'false'";
    case Tok::KwFor: return "'for'";
    case Tok::KwIf: return "'if'";
    case Tok::KwInit: return "'init'";
    case Tok::KwInteger: return "'integer'";
    case Tok::KwLong: return "'long'";
    case Tok::KwLoop: return "'loop'";
    case Tok::KwNil: return "'nil'";
    case Tok::KwNot: return "'not'";
    case Tok::KwObject: return "'object'";
    case Tok::KwOf: return "'of'";
    case Tok::KwOr: return "'or'";
    case Tok::KwOtherwise: return "'otherwise'";
    case Tok::KwPrivate: return "'private'";
    case Tok::KwProc: return "'proc'";
    case Tok::KwPublic: return "'public'";
    case Tok::KwReal: return "'real'";
    case Tok::KwReflective: return "'reflective'";
    case Tok::KwRepeat: return "'repeat'";
    case Tok::KwResult: return "'result'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwSelf: return "'self'";
    case Tok::KwShell: return "'shell'";
    case Tok::KwSubclass: return "'subclass'";
    case Tok::KwSubclassOf: return "'subclassOf'";
    case Tok::KwSubtypeOf: return "'subtypeOf'";
    case Tok::KwSuper: return "'super'";
    case Tok::KwThen: return "'then'";
    case Tok::KwTo: return "'to'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwTry: return "'try'";
    case Tok::KwType: return "'type'";
    case Tok::KwUntil: return "'until'";
    case Tok::KwVar: return "'var'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwXor: return "'xor'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Caret: return "'^'";
    case Tok::Tilde: return "'~'";
    case Tok::Shl: return "'<<'";
    case Tok::Shr: return "'>>'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Le: return "'<='";
    case Tok::Ge: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::Ne: return "'<>'";
    case Tok::Assign: return "'='";
    case Tok::PlusPlus: return "'++'";
    case Tok::MinusMinus: return "'--'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Hash: return "'#'";
    case Tok::At: return "'@'";
    case Tok::Ellipsis: return "'...'";
    }
    return "?";
}

} // namespace green
