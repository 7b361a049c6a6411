#pragma once

#include <stdexcept>
#include <string>

namespace fracalc {

enum class Errc {
    invalid_spec,
    invalid_order,
    resolution_exceeded,
    diverging_mass,
    unbounded_hint,
    no_convergence,
    no_limit,
    degenerate_time,
    stall,
    inconclusive_probe,
    usage,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace fracalc
