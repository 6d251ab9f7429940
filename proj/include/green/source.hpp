#ifndef GREEN_SOURCE_HPP
#define GREEN_SOURCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace green {

// Byte span into one source file, with the 1-based line/column of its start.
// Columns count Unicode scalar values, not bytes.
struct Span {
    uint32_t offset = 0;
    uint32_t length = 0;
    uint32_t line = 1;
    uint32_t col = 1;
};

struct SourceFile {
    std::string name;
    std::string text;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string file;
    Span span;
    std::string code;    // short stable slug, e.g. "bad-escape", "no-exact-overload"
    std::string message;
};

inline std::string render(const Diagnostic& d) {
    std::string s = d.file + ":" + std::to_string(d.span.line) + ":" +
                    std::to_string(d.span.col) + ": " +
                    (d.severity == Severity::Error ? "error[" : "warning[") + d.code +
                    "]: " + d.message;
    return s;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (auto& d : ds)
        if (d.severity == Severity::Error) return true;
    return false;
}

} // namespace green

#endif
