#ifndef FQM_REPORT_HPP
#define FQM_REPORT_HPP

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "fqm/bigrational.hpp"
#include "fqm/characters.hpp"
#include "fqm/momentcalc.hpp"
#include "fqm/moments.hpp"
#include "fqm/sqrtq.hpp"

namespace fqm {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// {"exact": "num/den", "decimal": x}
json rational_json(const BigRational& r);
/// {"re": x, "im": y}
json complex_json(std::complex<double> z);
/// {"rational": "num/den", "sqrt_q": "num/den", "decimal": x}
json sqrtq_json(const SqrtQNumber& x);

/// {q, Q, phi, generator, sample_dlogs: [{A, dlog}, ...]} for up to `samples`
/// residues in enumeration order.
json group_json(const CharGroup& group, std::size_t samples = 8);

json moment_json(const MomentReport& r);
json pieces_json(const FourthPieces& p);
json dm_row_json(const DmRow& row, bool exact);

/// One row of a convergence table.
struct CsvRow {
  std::uint64_t q = 0;
  int degQ = 0;
  int k = 0;
  int l = -1;  // blank when negative
  double computed = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
};

inline constexpr const char* kCsvHeader = "q,degQ,k,l,computed,predicted,ratio";

CsvRow csv_row(const MomentReport& r);
std::string emit_csv(const std::vector<CsvRow>& rows);

/// Columns m,dm,dm_decimal,m4_dm,distance,cross,cross_bound.
std::string emit_dm_csv(const std::vector<DmRow>& rows);

/// {config, results, timing: {seconds}, version}
json make_document(const json& config, const json& results, double seconds);

/// Pretty-printed JSON with a trailing newline.
std::string emit_json(const json& doc);

/// Writes to path + ".tmp" and renames over path. Throws std::runtime_error.
void write_atomic(const std::string& path, const std::string& bytes);

}  // namespace fqm

#endif  // FQM_REPORT_HPP
