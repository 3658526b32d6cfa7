#pragma once

#include <stdexcept>
#include <string>

namespace nilprog {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpecMismatch : Error {
    using Error::Error;
};

// hp_extract: supplied validation points disagree with the extracted normal form.
struct ValidationMismatch : Error {
    using Error::Error;
};

// dark_expand: an extracted coefficient lands below its guaranteed filtration level.
struct WeightViolation : Error {
    using Error::Error;
};

// power_decompose: centrality precondition fails.
struct CommutationUnsafe : Error {
    using Error::Error;
};

// filtration_span_check: bracket closure did not stabilize within the depth cap.
struct DepthExceeded : Error {
    using Error::Error;
};

// iterate_closed_form: stepwise and closed-form iterates disagree.
struct ClosedFormMismatch : Error {
    using Error::Error;
};

// check_intertwining: orbit leaves the map's single-valuedness domain.
struct DomainViolation : Error {
    using Error::Error;
};

struct ConfigInvalid : Error {
    using Error::Error;
};

}  // namespace nilprog
