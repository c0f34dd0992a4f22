#pragma once

#include <stdexcept>
#include <string>

namespace sketchforge {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  /// Stable identifier such as "NotComposable".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SKETCHFORGE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

SKETCHFORGE_ERROR(UnknownObject);
SKETCHFORGE_ERROR(UnknownMorphism);
SKETCHFORGE_ERROR(NotComposable);
SKETCHFORGE_ERROR(NotExplicit);
SKETCHFORGE_ERROR(EmptyLabelSet);
SKETCHFORGE_ERROR(BadParam);
SKETCHFORGE_ERROR(LevelMismatch);
SKETCHFORGE_ERROR(IndexOutOfRange);
SKETCHFORGE_ERROR(NotConePreserving);
SKETCHFORGE_ERROR(NotInjectiveOnObjects);
SKETCHFORGE_ERROR(SortMismatch);
SKETCHFORGE_ERROR(BoundExceeded);
SKETCHFORGE_ERROR(NotFunctorial);
SKETCHFORGE_ERROR(CarrierConflict);
SKETCHFORGE_ERROR(UnderdeterminedCarrier);
SKETCHFORGE_ERROR(NotStrict);
SKETCHFORGE_ERROR(NotSemiTheory);
SKETCHFORGE_ERROR(ParseError);

#undef SKETCHFORGE_ERROR

}  // namespace sketchforge
