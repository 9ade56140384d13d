#pragma once

#include <stdexcept>
#include <string>

namespace bw {

enum class Errc {
    domain,
    precondition,
    shape,
    io,
    usage,
    degenerate,
    geometry,
    solver,
    integrality,
    invalid,
    incomplete,
    scale,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace bw
