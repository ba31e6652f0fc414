// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace agkey {

// Base of every error raised by the library. Decoding failure is not an
// error; it is reported through DecodeResult.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define AGKEY_DECLARE_ERROR(Name)                                         \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

// gf
AGKEY_DECLARE_ERROR(ReducibleModulus);
AGKEY_DECLARE_ERROR(UnsupportedField);
AGKEY_DECLARE_ERROR(DivisionByZero);
AGKEY_DECLARE_ERROR(MixedFields);
AGKEY_DECLARE_ERROR(ParseError);

// linalg
AGKEY_DECLARE_ERROR(DimensionMismatch);
AGKEY_DECLARE_ERROR(NotSubspace);
AGKEY_DECLARE_ERROR(SingularMatrix);

// curve
AGKEY_DECLARE_ERROR(SingularCurve);
AGKEY_DECLARE_ERROR(NotHomogeneous);
AGKEY_DECLARE_ERROR(PrecisionTooSmall);
AGKEY_DECLARE_ERROR(NonRationalIntersection);
AGKEY_DECLARE_ERROR(NotOnCurve);
AGKEY_DECLARE_ERROR(UnsupportedCurve);

// funcspace
AGKEY_DECLARE_ERROR(UnsupportedDivisor);
AGKEY_DECLARE_ERROR(AmbientTooSmall);
AGKEY_DECLARE_ERROR(PrecisionExhausted);
AGKEY_DECLARE_ERROR(PoleOrderUnbounded);
AGKEY_DECLARE_ERROR(BadDivisorRange);
AGKEY_DECLARE_ERROR(SupportOverlap);
AGKEY_DECLARE_ERROR(DegenerateDecomposition);
AGKEY_DECLARE_ERROR(NotInSpace);

// agcode
AGKEY_DECLARE_ERROR(DegreeOutOfRange);
AGKEY_DECLARE_ERROR(PoleOnD);

// mcd / decoder
AGKEY_DECLARE_ERROR(ConditionAViolated);
AGKEY_DECLARE_ERROR(EmptyVote);
AGKEY_DECLARE_ERROR(NoExtraPoint);
AGKEY_DECLARE_ERROR(GenusZero);
AGKEY_DECLARE_ERROR(CapacityZero);

// cli
AGKEY_DECLARE_ERROR(ConfigError);
AGKEY_DECLARE_ERROR(LengthMismatch);

// A mathematical invariant that must hold by construction did not.
AGKEY_DECLARE_ERROR(InvariantViolation);

#undef AGKEY_DECLARE_ERROR

} // namespace agkey
