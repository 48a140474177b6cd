#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eigenbranch {

// Exit codes used by the command-line front end. Library errors map onto them.
enum class ExitCode : int {
    ok = 0,
    geometry = 2,
    meshing = 3,
    convergence = 4,
    certify_fail = 5,
    not_applicable = 6,
    usage = 64,
    data = 65,
    internal = 70,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const { return ExitCode::internal; }
};

class GeometryError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::geometry; }
};

class MeshingError : public Error {
public:
    MeshingError(const std::string& what, double x, double y)
        : Error(what + " near (" + std::to_string(x) + ", " + std::to_string(y) + ")"), x_(x), y_(y) {}
    double x() const { return x_; }
    double y() const { return y_; }
    ExitCode exit_code() const override { return ExitCode::meshing; }

private:
    double x_, y_;
};

class InvalidInput : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::usage; }
};

class DataError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::data; }
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best_residuals)
        : Error(what), residuals_(std::move(best_residuals)) {}
    const std::vector<double>& best_residuals() const { return residuals_; }
    ExitCode exit_code() const override { return ExitCode::convergence; }

private:
    std::vector<double> residuals_;
};

class FactorizationError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::convergence; }
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

}  // namespace eigenbranch
