#pragma once

#include <stdexcept>
#include <string>

namespace symgen {

struct division_by_zero : std::domain_error {
    using std::domain_error::domain_error;
};
struct undefined_degree : std::domain_error {
    using std::domain_error::domain_error;
};
struct missing_rule : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct missing_value : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct non_unit : std::domain_error {
    using std::domain_error::domain_error;
};
struct window_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct coincident_points : std::domain_error {
    using std::domain_error::domain_error;
};
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_strict : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace symgen
