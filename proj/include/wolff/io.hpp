#pragma once

#include <string>
#include <vector>

#include "wolff/independence.hpp"
#include "wolff/measure.hpp"
#include "wolff/packing.hpp"
#include "wolff/verify.hpp"

namespace wolff {

/// File that cannot be opened or written.
class FileError : public std::runtime_error {
public:
    explicit FileError(const std::string& what) : std::runtime_error(what) {}
};

/// Input that is not JSON at all.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// JSON that parses but does not match the documented schema; the message
/// carries the path of the offending field.
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Schema-valid file whose contents violate a module invariant (overlapping
/// discs, broken ledger, bad leading atom, ...).
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// All reals are serialized as decimal with 17 significant digits, which
/// round-trips IEEE doubles exactly, so save(load(x)) is byte-identical for
/// files this writer produced.
std::string format_real(double x);

std::string packing_to_json(const Packing& packing);
Packing packing_from_json(const std::string& text);

enum class MeasureValidation {
    full,        // every invariant including the weight/residual ledger
    structural,  // everything except the ledger, which verification re-checks
};

std::string measure_to_json(const AnnihilatingMeasure& measure);
AnnihilatingMeasure measure_from_json(const std::string& text,
                                      MeasureValidation mode = MeasureValidation::full);

std::string measure_to_csv(const AnnihilatingMeasure& measure);

std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

std::string certificate_to_json(const IndependenceCertificate& cert);
std::string contrast_to_json(const ContrastReport& report);

/// Points for an independence problem: one "re,im" pair per line ("re" alone
/// means a real point); a leading "re,im" header line is skipped.
std::vector<Complex> points_from_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace wolff
