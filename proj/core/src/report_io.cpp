#include "sigmabias/report_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "sigmabias/errors.hpp"
#include "sigmabias/version.hpp"

namespace sigmabias {

namespace {

std::string format_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s;
  return out.str();
}

std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& expected_format) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) {
      if (line.rfind("csv:", 0) == 0 || line.rfind("gap_list:", 0) == 0) continue;
      break;  // free-form tail (CSV body)
    }
    kv.emplace(line.substr(0, colon), line.substr(colon + 2));
  }
  const auto it = kv.find("format");
  if (it == kv.end() || it->second != expected_format)
    throw std::invalid_argument("report: expected format '" + expected_format + "'");
  return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("report: missing field '" + key + "'");
  return it->second;
}

std::uint64_t need_u64(const std::map<std::string, std::string>& kv, const std::string& key) {
  const std::string& s = need(kv, key);
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("report: bad integer in '" + key + "'");
  }
}

}  // namespace

std::string bound_report_text(const BoundReport& report) {
  std::ostringstream out;
  out << "# certified upper bound for the density of {n : sigma(mn+1) >= sigma(mn)}\n";
  out << "format: sigmabias-bound/1\n";
  out << "version: " << kVersion << "\n";
  out << "modulus: " << report.modulus << "\n";
  out << "smooth_y: " << report.smooth_y << "\n";
  out << "cap: " << report.cap << "\n";
  out << "exponent: " << report.exponent << "\n";
  out << "zeta_terms: " << report.zeta_terms << "\n";
  out << "mode: " << report.mode << "\n";
  out << "workers: " << report.workers << "\n";
  out << "b_count: " << report.b_count << "\n";
  out << "pairs: " << report.pair_count << "\n";
  out << "valid_pairs: " << report.valid_pair_count << "\n";
  out << "lambda_lo: " << decimal_string(report.lambda.lo, 15, Rounding::kDown) << "\n";
  out << "lambda_hi: " << decimal_string(report.lambda.hi, 15, Rounding::kUp) << "\n";
  out << "total_saving: " << rational_string(report.total_saving) << "\n";
  out << "upper_bound: " << rational_string(report.upper_bound) << "\n";
  out << "upper_bound_display: " << report.display << "\n";
  out << "wall_seconds: " << format_seconds(report.wall_seconds) << "\n";
  if (!report.pair_csv.empty()) {
    out << "csv:\n";
    out << report.pair_csv;
  }
  return out.str();
}

BoundReport parse_bound_report(const std::string& text) {
  const auto kv = parse_key_values(text, "sigmabias-bound/1");
  BoundReport report;
  report.modulus = need_u64(kv, "modulus");
  report.smooth_y = need_u64(kv, "smooth_y");
  report.cap = need_u64(kv, "cap");
  report.exponent = static_cast<unsigned>(need_u64(kv, "exponent"));
  report.zeta_terms = need_u64(kv, "zeta_terms");
  report.mode = need(kv, "mode");
  report.workers = static_cast<unsigned>(need_u64(kv, "workers"));
  report.b_count = need_u64(kv, "b_count");
  report.pair_count = need_u64(kv, "pairs");
  report.valid_pair_count = need_u64(kv, "valid_pairs");
  report.total_saving = parse_rational(need(kv, "total_saving"));
  report.upper_bound = parse_rational(need(kv, "upper_bound"));
  report.display = need(kv, "upper_bound_display");
  return report;
}

std::string sieve_report_text(const SieveReport& report) {
  std::ostringstream out;
  out << "# comparison census of sigma(mn+1) against sigma(mn)\n";
  out << "format: sigmabias-sieve/1\n";
  out << "version: " << kVersion << "\n";
  out << "modulus: " << report.modulus << "\n";
  out << "limit: " << report.limit << "\n";
  out << "block_values: " << report.block_values << "\n";
  out << "workers: " << report.workers << "\n";
  out << "count_less: " << report.count_less << "\n";
  out << "count_equal: " << report.count_equal << "\n";
  out << "count_greater: " << report.count_greater << "\n";
  auto first = [&](const char* name, const std::optional<std::uint64_t>& v) {
    out << name << ": ";
    if (v)
      out << *v;
    else
      out << "none";
    out << "\n";
  };
  first("first_less", report.first_less);
  first("first_equal", report.first_equal);
  first("first_greater", report.first_greater);
  out << "gap_count: " << report.gap_count << "\n";
  out << "gap_list_cap: " << report.gap_list_cap << "\n";
  out << "gap_list:";
  for (const std::uint64_t n : report.gap_list) out << ' ' << n;
  out << "\n";
  out << "wall_seconds: " << format_seconds(report.wall_seconds) << "\n";
  if (!report.csv.empty()) {
    out << "csv:\n";
    out << report.csv;
  }
  return out.str();
}

SieveReport parse_sieve_report(const std::string& text) {
  const auto kv = parse_key_values(text, "sigmabias-sieve/1");
  SieveReport report;
  report.modulus = need_u64(kv, "modulus");
  report.limit = need_u64(kv, "limit");
  report.block_values = need_u64(kv, "block_values");
  report.workers = static_cast<unsigned>(need_u64(kv, "workers"));
  report.count_less = need_u64(kv, "count_less");
  report.count_equal = need_u64(kv, "count_equal");
  report.count_greater = need_u64(kv, "count_greater");
  auto first = [&](const std::string& key) -> std::optional<std::uint64_t> {
    const std::string& s = need(kv, key);
    if (s == "none") return std::nullopt;
    return std::stoull(s);
  };
  report.first_less = first("first_less");
  report.first_equal = first("first_equal");
  report.first_greater = first("first_greater");
  report.gap_count = need_u64(kv, "gap_count");
  report.gap_list_cap = need_u64(kv, "gap_list_cap");
  // gap_list line
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("gap_list:", 0) == 0) {
      std::istringstream vals(line.substr(9));
      std::uint64_t n;
      while (vals >> n) report.gap_list.push_back(n);
    }
  }
  return report;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sigmabias
