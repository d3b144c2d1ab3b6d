#include "timnoma/error.hpp"

#include <sstream>
#include <utility>

namespace timnoma {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EmptyDistances: return "empty_distances";
    case ErrorCode::NonPositiveDistance: return "non_positive_distance";
    case ErrorCode::UnsortedDistances: return "unsorted_distances";
    case ErrorCode::DistanceBeyondRadius: return "distance_beyond_radius";
    case ErrorCode::InvalidRadius: return "invalid_radius";
    case ErrorCode::InvalidPathLossExponent: return "invalid_path_loss_exponent";
    case ErrorCode::GroupCountOutOfRange: return "group_count_out_of_range";
    case ErrorCode::UserIndexOutOfRange: return "user_index_out_of_range";
    case ErrorCode::GroupIndexOutOfRange: return "group_index_out_of_range";
    case ErrorCode::NonPositivePower: return "non_positive_power";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    }
    return "unknown";
}

namespace {

std::string format_parse_error(std::size_t line, const std::string& field,
                               const std::string& message) {
    std::ostringstream os;
    if (line > 0) os << "line " << line << ": ";
    if (!field.empty()) os << "'" << field << "': ";
    os << message;
    return os.str();
}

std::string join_violations(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) {
        out += "\n  - ";
        out += s;
    }
    return out;
}

} // namespace

ConfigParseError::ConfigParseError(std::size_t line, const std::string& field,
                                   const std::string& message)
    : std::runtime_error(format_parse_error(line, field, message)), line_(line), field_(field) {}

ConfigValidationError::ConfigValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

} // namespace timnoma
