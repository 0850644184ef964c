#pragma once

#include <stdexcept>
#include <string>

namespace opz {

/// The moment sequence is not positive definite through the requested degree,
/// or (float path) a leading Hankel pivot fell below the near-singularity threshold.
class SingularMomentsError : public std::runtime_error
{
public:
    SingularMomentsError(int minor_order, const std::string& what)
        : std::runtime_error(what), minor_order_(minor_order)
    {}

    /// Order of the first failing leading principal minor.
    int minor_order() const noexcept { return minor_order_; }

private:
    int minor_order_;
};

class DegreeCapError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Exact and floating zero paths disagree beyond their combined tolerance.
class PathDisagreementError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace opz
