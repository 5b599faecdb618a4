#include "tenrank/error.hpp"

namespace tenrank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndexOutOfShape: return "IndexOutOfShape";
    case ErrorCode::ScalarKindMismatch: return "ScalarKindMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroTensor: return "ZeroTensor";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::UnsupportedArity: return "UnsupportedArity";
    case ErrorCode::WeakCertificate: return "WeakCertificate";
    case ErrorCode::NotBlockPyramidal: return "NotBlockPyramidal";
    case ErrorCode::CertificateSubjectMismatch: return "CertificateSubjectMismatch";
    case ErrorCode::NotMinimalRank: return "NotMinimalRank";
    case ErrorCode::RearrangementFailed: return "RearrangementFailed";
    case ErrorCode::NotADegeneration: return "NotADegeneration";
    case ErrorCode::InvalidEpsDecomposition: return "InvalidEpsDecomposition";
    case ErrorCode::ArityCapExceeded: return "ArityCapExceeded";
    case ErrorCode::UnverifiedDecomposition: return "UnverifiedDecomposition";
  }
  return "UnknownError";
}

}  // namespace tenrank
