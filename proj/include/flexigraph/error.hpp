#pragma once

#include <stdexcept>
#include <string>

namespace flexigraph {

// Single exception type; the kind decides the CLI exit code
// (parse/domain -> 1, resource -> 2).
class Error : public std::runtime_error {
public:
    enum class Kind { parse, domain, resource };

    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}

    Kind kind() const { return kind_; }

    static Error parse(const std::string& msg) { return Error(Kind::parse, msg); }
    static Error domain(const std::string& msg) { return Error(Kind::domain, msg); }
    static Error resource(const std::string& msg) { return Error(Kind::resource, msg); }

private:
    Kind kind_;
};

} // namespace flexigraph
