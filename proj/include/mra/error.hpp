#pragma once

#include <stdexcept>
#include <string>

namespace mra {

/// Base class of all engine errors. `code()` returns a stable identifier
/// suitable for tests and CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Errors raised while parsing or validating a pipeline document, before any
/// data is touched. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

#define MRA_DEFINE_ERROR(NAME, BASE)                                        \
    class NAME : public BASE {                                              \
    public:                                                                 \
        explicit NAME(const std::string& message) : BASE(#NAME, message) {} \
    }

// core-relation
MRA_DEFINE_ERROR(UnknownAttribute, Error);
MRA_DEFINE_ERROR(TypeMismatch, Error);
MRA_DEFINE_ERROR(DuplicateAlias, Error);
MRA_DEFINE_ERROR(DuplicateAttribute, Error);
MRA_DEFINE_ERROR(SchemaMismatch, Error);
MRA_DEFINE_ERROR(IntegerOverflow, Error);
MRA_DEFINE_ERROR(InvalidArgument, Error);

// relation-space
MRA_DEFINE_ERROR(DuplicateGroupingSet, Error);
MRA_DEFINE_ERROR(IllegitimateDimensions, Error);

// slice-relation
MRA_DEFINE_ERROR(IllegitimateBlock, Error);
MRA_DEFINE_ERROR(NoMatchingRelation, Error);
MRA_DEFINE_ERROR(DuplicateFeatureSchema, Error);
MRA_DEFINE_ERROR(DuplicateRegionSchema, Error);

// slice-algebra
MRA_DEFINE_ERROR(UnknownRegionSchema, Error);
MRA_DEFINE_ERROR(UnknownFeatureSchema, Error);
MRA_DEFINE_ERROR(PredicateSchemaError, Error);
MRA_DEFINE_ERROR(MissingReferenceSlice, Error);
MRA_DEFINE_ERROR(IllegitimateOutputSchema, Error);
MRA_DEFINE_ERROR(DimensionConflict, Error);
MRA_DEFINE_ERROR(ProjectionNotSubset, Error);
MRA_DEFINE_ERROR(UnsupportedJoinGraph, Error);

// transform-library
MRA_DEFINE_ERROR(NonScalarFeature, Error);
MRA_DEFINE_ERROR(ZeroReferenceCount, Error);
MRA_DEFINE_ERROR(NonPositiveDenominator, Error);
MRA_DEFINE_ERROR(NonFiniteModelValue, Error);
MRA_DEFINE_ERROR(EmptyPeriod, Error);
MRA_DEFINE_ERROR(UnknownTransform, Error);

// pipeline-cli
MRA_DEFINE_ERROR(ParseError, ValidationError);
MRA_DEFINE_ERROR(UnknownOperator, ValidationError);
MRA_DEFINE_ERROR(UnboundInput, ValidationError);
MRA_DEFINE_ERROR(CyclicBinding, ValidationError);
MRA_DEFINE_ERROR(DuplicateBinding, ValidationError);
MRA_DEFINE_ERROR(UnknownSchemaHandle, ValidationError);
MRA_DEFINE_ERROR(BadOperatorArgument, ValidationError);

#undef MRA_DEFINE_ERROR

}  // namespace mra
