#pragma once

#include <stdexcept>
#include <string>

namespace taseval {

// Base class for all toolkit errors. Subclasses carry the failure category
// in the type so callers can catch selectively; the message carries detail.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define TASEVAL_DEFINE_ERROR(name)                            \
  class name : public Error {                                 \
   public:                                                    \
    explicit name(const std::string& msg) : Error(msg) {}     \
  }

// imgcore
TASEVAL_DEFINE_ERROR(MalformedImage);
TASEVAL_DEFINE_ERROR(UnsupportedFormat);
TASEVAL_DEFINE_ERROR(WrongColorspace);
TASEVAL_DEFINE_ERROR(ZeroDimension);
TASEVAL_DEFINE_ERROR(NonPositiveSigma);
TASEVAL_DEFINE_ERROR(InvalidBankParams);

// simmetrics / fsim / colordiff
TASEVAL_DEFINE_ERROR(ShapeMismatch);
TASEVAL_DEFINE_ERROR(ImageTooSmall);
TASEVAL_DEFINE_ERROR(DimensionMismatch);
TASEVAL_DEFINE_ERROR(DegenerateCovariance);
TASEVAL_DEFINE_ERROR(DegenerateInput);
TASEVAL_DEFINE_ERROR(NonFiniteInput);
TASEVAL_DEFINE_ERROR(EmptyMask);

// styleextract
TASEVAL_DEFINE_ERROR(UncoveredCodepoint);
TASEVAL_DEFINE_ERROR(EmptyText);
TASEVAL_DEFINE_ERROR(MissingExternalFile);

// tas_eval
TASEVAL_DEFINE_ERROR(LengthMismatch);
TASEVAL_DEFINE_ERROR(ConstantInput);
TASEVAL_DEFINE_ERROR(DegenerateVariance);
TASEVAL_DEFINE_ERROR(EmptyBatch);
TASEVAL_DEFINE_ERROR(MissingGroundTruth);

// corpus / cli
TASEVAL_DEFINE_ERROR(ParseError);
TASEVAL_DEFINE_ERROR(DuplicatePairId);
TASEVAL_DEFINE_ERROR(InvalidConfig);
TASEVAL_DEFINE_ERROR(ItemMismatch);
TASEVAL_DEFINE_ERROR(IoError);

#undef TASEVAL_DEFINE_ERROR

}  // namespace taseval
