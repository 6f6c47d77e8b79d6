#pragma once

#include <stdexcept>
#include <string>

namespace skdv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class NanError : public Error {
public:
    using Error::Error;
};

class DomainTooSmall : public Error {
public:
    DomainTooSmall(const std::string& what, double contamination)
        : Error(what), contamination_(contamination) {}
    double contamination() const { return contamination_; }

private:
    double contamination_;
};

class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int required_j_max)
        : Error(what), required_(required_j_max) {}
    int required_j_max() const { return required_; }

private:
    int required_;
};

/// Raised by the time stepper when a norm overflows or turns NaN.
class BlowUpDetected : public Error {
public:
    BlowUpDetected(const std::string& what, double time, double norm)
        : Error(what), time_(time), norm_(norm) {}
    double time() const { return time_; }
    double norm() const { return norm_; }

private:
    double time_;
    double norm_;
};

/// Raised by the Picard solver when successive differences keep growing.
class ContractionFailure : public Error {
public:
    ContractionFailure(const std::string& what, double horizon, double mu1, double mu2)
        : Error(what), horizon_(horizon), mu1_(mu1), mu2_(mu2) {}
    double horizon() const { return horizon_; }
    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }

private:
    double horizon_;
    double mu1_;
    double mu2_;
};

class InsufficientResolution : public Error {
public:
    using Error::Error;
};

class NotApplicable : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

class CorruptFile : public Error {
public:
    using Error::Error;
};

class TruncatedFile : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line) : Error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace skdv
