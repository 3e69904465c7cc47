#pragma once

#include <stdexcept>
#include <string>

namespace partcat {

enum class ErrorCode {
    invalid_blocks,
    extra_singleton_in_block,
    mixed_regime,
    signature_mismatch,
    syntax_error,
    unknown_generator,
    bad_param,
    arity_mismatch,
    context_mismatch,
    odd_length,
    wrong_regime,
    block_too_large,
    budget_too_small,
    bound_mismatch,
    missing_name,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::invalid_blocks: return "InvalidBlocks";
        case ErrorCode::extra_singleton_in_block: return "ExtraSingletonInBlock";
        case ErrorCode::mixed_regime: return "MixedRegime";
        case ErrorCode::signature_mismatch: return "SignatureMismatch";
        case ErrorCode::syntax_error: return "SyntaxError";
        case ErrorCode::unknown_generator: return "UnknownGenerator";
        case ErrorCode::bad_param: return "BadParam";
        case ErrorCode::arity_mismatch: return "ArityMismatch";
        case ErrorCode::context_mismatch: return "ContextMismatch";
        case ErrorCode::odd_length: return "OddLength";
        case ErrorCode::wrong_regime: return "WrongRegime";
        case ErrorCode::block_too_large: return "BlockTooLarge";
        case ErrorCode::budget_too_small: return "BudgetTooSmall";
        case ErrorCode::bound_mismatch: return "BoundMismatch";
        case ErrorCode::missing_name: return "MissingName";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Syntax errors carry the byte offset of the offending character.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t pos, const std::string& what)
        : Error(ErrorCode::syntax_error, what + " at position " + std::to_string(pos)), pos_(pos) {}

    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

}  // namespace partcat
