#pragma once

#include "onrefl/arith.hpp"

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

namespace onrefl {

struct VerificationRecord {
    std::string theorem;
    std::string params;
    std::vector<Rational> lhs;
    std::vector<Rational> rhs;
    bool pass = false;
    double ms = 0;
    std::string note;
};

VerificationRecord make_record(std::string theorem, std::string params, std::vector<Rational> lhs,
                               std::vector<Rational> rhs);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

enum class ReportFormat { Tsv, JsonLines };

std::string format_vector(const std::vector<Rational>& v);
void emit_header(std::ostream& os, ReportFormat fmt);
void emit_record(std::ostream& os, const VerificationRecord& r, ReportFormat fmt, bool with_timing = true);
void emit(std::ostream& os, const std::vector<VerificationRecord>& records, ReportFormat fmt, bool with_timing = true);

}  // namespace onrefl
