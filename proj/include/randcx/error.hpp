#ifndef RANDCX_ERROR_HPP
#define RANDCX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace randcx {

/// Failure categories raised by the library. Each operation documents which
/// of these it may throw.
enum class ErrorKind {
    out_of_range,
    missing_boundary_edge,
    degenerate_simplex,
    equal_vertices,
    missing_edge,
    unknown_face,
    disconnected,
    bad_probability,
    too_small,
    bad_field,
    size_cap_exceeded,
    overflow,
    no_faces,
    anchor_missing,
    too_large,
    missing_anchor_edges,
    budget_cap_exceeded,
    invalid_loop,
    not_admissible,
    internal_inconsistency,
    denominator_nonpositive,
    config_error,
    missing_column,
    empty_input,
    parse_error,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::missing_boundary_edge: return "MissingBoundaryEdge";
    case ErrorKind::degenerate_simplex: return "DegenerateSimplex";
    case ErrorKind::equal_vertices: return "EqualVertices";
    case ErrorKind::missing_edge: return "MissingEdge";
    case ErrorKind::unknown_face: return "UnknownFace";
    case ErrorKind::disconnected: return "Disconnected";
    case ErrorKind::bad_probability: return "BadProbability";
    case ErrorKind::too_small: return "TooSmall";
    case ErrorKind::bad_field: return "BadField";
    case ErrorKind::size_cap_exceeded: return "SizeCapExceeded";
    case ErrorKind::overflow: return "Overflow";
    case ErrorKind::no_faces: return "NoFaces";
    case ErrorKind::anchor_missing: return "AnchorMissing";
    case ErrorKind::too_large: return "TooLarge";
    case ErrorKind::missing_anchor_edges: return "MissingAnchorEdges";
    case ErrorKind::budget_cap_exceeded: return "BudgetCapExceeded";
    case ErrorKind::invalid_loop: return "InvalidLoop";
    case ErrorKind::not_admissible: return "NotAdmissible";
    case ErrorKind::internal_inconsistency: return "InternalInconsistency";
    case ErrorKind::denominator_nonpositive: return "DenominatorNonpositive";
    case ErrorKind::config_error: return "ConfigError";
    case ErrorKind::missing_column: return "MissingColumn";
    case ErrorKind::empty_input: return "EmptyInput";
    case ErrorKind::parse_error: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace randcx

#endif
