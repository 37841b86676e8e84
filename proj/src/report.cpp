#include "fqm/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fqm/ffpoly.hpp"

namespace fqm {

namespace {

// Shortest round-trip form, matching the JSON number rendering.
std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

}  // namespace

json rational_json(const BigRational& r) {
  return json{{"exact", to_fraction_string(r)}, {"decimal", to_double(r)}};
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json sqrtq_json(const SqrtQNumber& x) {
  return json{{"rational", to_fraction_string(x.a())}, {"sqrt_q", to_fraction_string(x.b())}, {"decimal", x.to_double()}};
}

json group_json(const CharGroup& group, std::size_t samples) {
  const FieldDesc& F = group.field();
  json dl = json::array();
  const auto& table = group.dlog_table();
  std::size_t taken = 0;
  for (std::uint64_t code = 1; code < table.size() && taken < samples; ++code) {
    dl.push_back(json{{"A", format_poly(F, poly_from_code(F, code))}, {"dlog", table[code]}});
    ++taken;
  }
  return json{{"q", F.q()},
              {"Q", format_poly(F, group.modulus())},
              {"degQ", group.degree()},
              {"phi", group.phi()},
              {"generator", format_poly(F, group.generator())},
              {"sample_dlogs", dl}};
}

json pieces_json(const FourthPieces& p) {
  return json{{"diagonal", sqrtq_json(p.diagonal)},
              {"offdiagonal", sqrtq_json(p.offdiagonal)},
              {"remainder", sqrtq_json(p.remainder)},
              {"combined", p.combined},
              {"direct", complex_json(p.direct)},
              {"relative_error", p.relative_error},
              {"passed", p.passed}};
}

json moment_json(const MomentReport& r) {
  json j{{"kind", r.kind}, {"q", r.q}, {"degQ", r.degQ}, {"Q", r.Q}, {"k", r.k}};
  if (r.l) j["l"] = *r.l;
  j["computed"] = complex_json(r.computed);
  if (r.oracle) {
    json o{{"value", *r.oracle}, {"factor", r.oracle_factor}};
    if (r.oracle_exact) o["exact"] = sqrtq_json(*r.oracle_exact);
    o["relative_error"] = r.relative_error.value_or(0.0);
    j["oracle"] = o;
  } else {
    j["oracle"] = nullptr;
  }
  j["predicted"] = r.predicted;
  j["ratio"] = r.ratio;
  if (r.odd_part) j["odd_part"] = complex_json(*r.odd_part);
  if (r.even_part) j["even_part"] = complex_json(*r.even_part);
  if (r.pieces) j["pieces"] = pieces_json(*r.pieces);
  j["passed"] = r.passed;
  return j;
}

json dm_row_json(const DmRow& row, bool exact) {
  auto val = [exact](const BigRational& x) { return exact ? rational_json(x) : json(to_double(x)); };
  return json{{"m", row.m},
              {"dm", val(row.dm)},
              {"m4_dm", val(row.m4_dm)},
              {"distance", val(row.distance)},
              {"cross", val(row.cross)},
              {"cross_bound", val(row.cross_bound)},
              {"cross_within_bound", row.cross <= row.cross_bound}};
}

CsvRow csv_row(const MomentReport& r) {
  return CsvRow{r.q, r.degQ, r.k, r.l.value_or(-1), r.computed.real(), r.predicted, r.ratio};
}

std::string emit_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const CsvRow& r : rows) {
    os << r.q << ',' << r.degQ << ',' << r.k << ',';
    if (r.l >= 0) os << r.l;
    os << ',' << fmt_double(r.computed) << ',' << fmt_double(r.predicted) << ',' << fmt_double(r.ratio) << '\n';
  }
  return os.str();
}

std::string emit_dm_csv(const std::vector<DmRow>& rows) {
  std::ostringstream os;
  os << "m,dm,dm_decimal,m4_dm,distance,cross,cross_bound\n";
  for (const DmRow& r : rows) {
    os << r.m << ',' << to_fraction_string(r.dm) << ',' << fmt_double(to_double(r.dm)) << ','
       << to_fraction_string(r.m4_dm) << ',' << to_fraction_string(r.distance) << ','
       << to_fraction_string(r.cross) << ',' << to_fraction_string(r.cross_bound) << '\n';
  }
  return os.str();
}

json make_document(const json& config, const json& results, double seconds) {
  return json{{"config", config}, {"results", results}, {"timing", json{{"seconds", seconds}}}, {"version", kVersion}};
}

std::string emit_json(const json& doc) { return doc.dump(2) + "\n"; }

void write_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << bytes;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace fqm
