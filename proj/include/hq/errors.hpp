#pragma once

#include <stdexcept>
#include <string>

namespace hq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent scenario input. The CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numerical or convergence failure. The CLI maps this to exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

#define HQ_DEFINE_ERROR(Name, Base) \
    class Name : public Base {      \
    public:                         \
        using Base::Base;           \
    }

HQ_DEFINE_ERROR(UnknownHarmonic, ConfigError);
HQ_DEFINE_ERROR(NoResonantMode, ConfigError);
HQ_DEFINE_ERROR(ModeMismatch, ConfigError);
HQ_DEFINE_ERROR(BadBipartition, ConfigError);
HQ_DEFINE_ERROR(MultiMode, ConfigError);
HQ_DEFINE_ERROR(InvalidTimeOrder, NumericError);
HQ_DEFINE_ERROR(ConvergenceFailure, NumericError);
HQ_DEFINE_ERROR(NoCrossing, NumericError);
HQ_DEFINE_ERROR(TangentResonance, NumericError);
HQ_DEFINE_ERROR(ZeroNorm, NumericError);
HQ_DEFINE_ERROR(NotPureReduction, NumericError);
HQ_DEFINE_ERROR(NonHermitianResidue, NumericError);
HQ_DEFINE_ERROR(GridTooCoarse, NumericError);
HQ_DEFINE_ERROR(BadSpectrum, NumericError);

#undef HQ_DEFINE_ERROR

/// Fock truncation lost more probability than allowed; carries the residual.
class CutoffTooSmall : public NumericError {
public:
    CutoffTooSmall(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace hq
