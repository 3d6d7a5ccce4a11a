#pragma once
#include <stdexcept>
#include <string>

namespace gha {

/* Contract violations (shape mismatch, out-of-window query, bad input)
   surface as exceptions; the cli maps them to exit codes >= 3. */
struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw contract_error(msg);
}

} // namespace gha
