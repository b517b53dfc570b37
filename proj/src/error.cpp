#include "wsq/error.hpp"

namespace wsq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AllZeroWindow: return "AllZeroWindow";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::AsymmetricBeta: return "AsymmetricBeta";
    case ErrorKind::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::OmegaOutOfBand: return "OmegaOutOfBand";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::TruncationFailure: return "TruncationFailure";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::ExcessiveShift: return "ExcessiveShift";
    case ErrorKind::SingularDeterminant: return "SingularDeterminant";
    case ErrorKind::CWNotSupported: return "CWNotSupported";
    case ErrorKind::LeakageExceeded: return "LeakageExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace wsq
