#pragma once

#include <stdexcept>
#include <string>

namespace ctg {

struct CtgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IllegalOMove : CtgError { using CtgError::CtgError; };
struct NotInitial : CtgError { using CtgError::CtgError; };
struct MalformedView : CtgError { using CtgError::CtgError; };
struct ComponentMismatch : CtgError { using CtgError::CtgError; };
struct Divergence : CtgError { using CtgError::CtgError; };
struct NotInnocent : CtgError { using CtgError::CtgError; };
struct NoDescription : CtgError { using CtgError::CtgError; };
struct FuelExhausted : CtgError { using CtgError::CtgError; };
struct RealizerMapDivergence : CtgError { using CtgError::CtgError; };
struct NotWellOpened : CtgError { using CtgError::CtgError; };
struct CwfTypeError : CtgError { using CtgError::CtgError; };
struct IoError : CtgError { using CtgError::CtgError; };

}  // namespace ctg
