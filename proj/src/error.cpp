#include "sba/error.hpp"

namespace sba {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonComposable: return "NonComposable";
        case ErrorKind::NotAdmissible: return "NotAdmissible";
        case ErrorKind::InfiniteDimensional: return "InfiniteDimensional";
        case ErrorKind::UnknownVertex: return "UnknownVertex";
        case ErrorKind::UnknownArrow: return "UnknownArrow";
        case ErrorKind::LoopAtDistinguished: return "LoopAtDistinguished";
        case ErrorKind::SignMismatch: return "SignMismatch";
        case ErrorKind::UnsupportedClass: return "UnsupportedClass";
        case ErrorKind::NotSkewGentleSource: return "NotSkewGentleSource";
        case ErrorKind::NotSourceOrSink: return "NotSourceOrSink";
        case ErrorKind::TrivialPolygon: return "TrivialPolygon";
        case ErrorKind::InvalidPosition: return "InvalidPosition";
        case ErrorKind::NotReflectable: return "NotReflectable";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::Parse: return "ParseError";
    }
    return "Error";
}

}  // namespace sba
