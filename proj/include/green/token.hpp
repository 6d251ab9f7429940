#ifndef GREEN_TOKEN_HPP
#define GREEN_TOKEN_HPP

#include <string>
#include <vector>

#include "green/source.hpp"

namespace green {

enum class Tok {
    Eof,
    Ident,
    // literals
    IntLit,
    LongLit,
    ByteLit,
    RealLit,
    DoubleLit,
    CharLit,
    StrLit,
    // keywords
    KwAbstract, KwAfter, KwAnd, KwArray, KwAssert, KwBefore, KwBegin, KwBoolean,
    KwBreak, KwByte, KwCase, KwChar, KwClass, KwConst, KwDo, KwDouble, KwElse,
    KwEnd, KwEndif, KwEnum, KwException, KwFalse, KwFor, KwIf, KwInit, KwInteger,
    KwLong, KwLoop, KwNil, KwNot, KwObject, KwOf, KwOr, KwOtherwise, KwPrivate,
    KwProc, KwPublic, KwReal, KwReflective, KwRepeat, KwResult, KwReturn, KwSelf,
    KwShell, KwSubclass, KwSubclassOf, KwSubtypeOf, KwSuper, KwThen, KwTo, KwTrue,
    KwTry, KwType, KwUntil, KwVar, KwWhile, KwXor,
    // punctuation and operators
    Plus, Minus, Star, Slash, Percent, Amp, Pipe, Caret, Tilde,
    Shl, Shr, Lt, Gt, Le, Ge, EqEq, Ne, Assign,
    PlusPlus, MinusMinus,
    LParen, RParen, LBracket, RBracket,
    Dot, Comma, Semi, Colon, Hash, At, Ellipsis,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string lexeme;   // exact source slice
    std::string lead;     // whitespace/comments preceding this token
    Span span;
    // decoded payloads
    long long ival = 0;       // Int/Long/Byte
    double fval = 0;          // Real/Double
    std::string sval;         // StrLit decoded, Ident name
    unsigned char cval = 0;   // CharLit decoded
};

struct LexResult {
    std::vector<Token> tokens;     // always ends with Eof
    std::vector<Diagnostic> diags;
};

LexResult lex(const SourceFile& src);

const char* tok_name(Tok t);
bool is_keyword(Tok t);

} // namespace green

#endif
