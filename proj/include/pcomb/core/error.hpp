#ifndef PCOMB_CORE_ERROR_HPP
#define PCOMB_CORE_ERROR_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace pcomb {

// Malformed input: wrong shapes, out-of-range parameters, unparseable files.
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input exceeds a documented size cap (2^n enumeration, point budgets, ...).
class size_limit_error : public std::length_error {
public:
    using std::length_error::length_error;
};

// A randomized step missed its probabilistic guarantee; rerunning with a
// fresh seed is expected to succeed.
class retryable_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An output failed its postcondition. Carries the numbers that failed so the
// caller can report them.
class validation_failure : public std::runtime_error {
public:
    validation_failure(const std::string& what, std::map<std::string, double> stats = {})
        : std::runtime_error(what), stats_(std::move(stats)) {}

    const std::map<std::string, double>& stats() const noexcept { return stats_; }

private:
    std::map<std::string, double> stats_;
};

// A multi-stage pipeline could not finish; `stage` names where it stopped.
class pipeline_failure : public validation_failure {
public:
    pipeline_failure(std::string stage, const std::string& what, std::map<std::string, double> stats = {})
        : validation_failure(what, std::move(stats)), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

namespace detail {
inline void require(bool ok, const std::string& msg)
{
    if (!ok) throw invalid_argument(msg);
}
} // namespace detail

} // namespace pcomb

#endif // PCOMB_CORE_ERROR_HPP
