// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace oag {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define OAG_DEFINE_ERROR(Name)                                            \
    struct Name : Error {                                                 \
        explicit Name(const std::string& what = #Name) : Error(what) {}   \
    }

OAG_DEFINE_ERROR(DivisibleGroup);
OAG_DEFINE_ERROR(DiscreteGroup);
OAG_DEFINE_ERROR(NonDivisibleGroup);
OAG_DEFINE_ERROR(EmptyRegion);
OAG_DEFINE_ERROR(BadBounds);
OAG_DEFINE_ERROR(DimMismatch);
OAG_DEFINE_ERROR(UnsupportedDiscreteCell);
OAG_DEFINE_ERROR(SamplingExhausted);
OAG_DEFINE_ERROR(NotInDomain);
OAG_DEFINE_ERROR(AmbiguousPiece);
OAG_DEFINE_ERROR(NotInjectiveOnHull);
OAG_DEFINE_ERROR(ChainMismatch);
OAG_DEFINE_ERROR(NotVerified);
OAG_DEFINE_ERROR(NotDefinable);
OAG_DEFINE_ERROR(NotAPartition);
OAG_DEFINE_ERROR(NotInGroup);
OAG_DEFINE_ERROR(InGroup);
OAG_DEFINE_ERROR(CertificateError);

#undef OAG_DEFINE_ERROR

}  // namespace oag
