#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hprod {

enum class ErrorCode {
    invalid_order,
    not_simple,
    regularity,
    size_mismatch,
    arity,
    partial_assignment,
    shape,
    not_unicyclic,
    infeasible,
    malformed_labeling,
    precondition,
    family_consistency,
    search_refused,
    no_labeling,
    parse,
    construction_bug,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_order: return "invalid-order";
    case ErrorCode::not_simple: return "not-a-simple-graph";
    case ErrorCode::regularity: return "regularity";
    case ErrorCode::size_mismatch: return "size";
    case ErrorCode::arity: return "arity";
    case ErrorCode::partial_assignment: return "partial-assignment";
    case ErrorCode::shape: return "shape";
    case ErrorCode::not_unicyclic: return "not-unicyclic";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::malformed_labeling: return "malformed-labeling";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::family_consistency: return "family-consistency";
    case ErrorCode::search_refused: return "search-refused";
    case ErrorCode::no_labeling: return "no-labeling";
    case ErrorCode::parse: return "parse";
    case ErrorCode::construction_bug: return "construction-bug";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string & what)
        : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hprod
