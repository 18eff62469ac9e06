#pragma once

#include <stdexcept>
#include <string>

namespace linkform {

// A computation hit a configured limit (factorization guard or iteration
// budget). Raised instead of ever returning an unverified answer.
class ResourceExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// H^4 is infinite cyclic (n == 0); there is no torsion linking form.
class InfiniteTorsion : public std::domain_error {
public:
    InfiniteTorsion() : std::domain_error("n = 0: H^4 is infinite cyclic, no linking form") {}
};

}  // namespace linkform
