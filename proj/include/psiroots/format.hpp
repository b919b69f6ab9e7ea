#pragma once

#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psiroots/hyperfactorial.hpp"
#include "psiroots/series.hpp"
#include "psiroots/zeros.hpp"

namespace psiroots {

// 17 significant digits round-trip a double exactly (JSON payloads);
// CSV payloads use 12 for readability.
inline constexpr int kJsonDigits = 17;
inline constexpr int kCsvDigits = 12;

inline std::string fmt_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string opt_field(const std::optional<double>& v, int digits) {
  return v ? fmt_sig(*v, digits) : std::string("null");
}

// ---- zeros payloads -------------------------------------------------------

struct ZeroApprox {
  std::optional<double> arctan;
  std::optional<double> hermite;
  std::optional<double> gap;  // |value - arctan|
};

inline ZeroApprox zero_approximations(const ZeroRecord& r) {
  ZeroApprox a;
  try {
    a.arctan = r.family == ZeroFamily::Psi
                   ? approx_psi_zero(r.index, ApproxForm::Arctan)
                   : approx_psi_g_zero(r.index, ApproxForm::Arctan);
    a.hermite = r.family == ZeroFamily::Psi
                    ? approx_psi_zero(r.index, ApproxForm::Hermite)
                    : approx_psi_g_zero(r.index, ApproxForm::Hermite);
    a.gap = std::abs(r.value - *a.arctan);
  } catch (const std::domain_error&) {
    // asymptotic form undefined for small indices
  }
  return a;
}

inline std::string zeros_csv(std::span<const ZeroRecord> records) {
  std::string out = "index,value,bracket_lo,bracket_hi,residual,approx_arctan,approx_hermite,approx_gap\n";
  for (const auto& r : records) {
    const ZeroApprox a = zero_approximations(r);
    out += std::to_string(r.index);
    out += ',' + fmt_sig(r.value, kCsvDigits);
    out += ',' + fmt_sig(r.bracket_lo, kCsvDigits);
    out += ',' + fmt_sig(r.bracket_hi, kCsvDigits);
    out += ',' + fmt_sig(r.residual, kCsvDigits);
    out += ',' + (a.arctan ? fmt_sig(*a.arctan, kCsvDigits) : std::string());
    out += ',' + (a.hermite ? fmt_sig(*a.hermite, kCsvDigits) : std::string());
    out += ',' + (a.gap ? fmt_sig(*a.gap, kCsvDigits) : std::string());
    out += '\n';
  }
  return out;
}

inline std::string zeros_json(std::span<const ZeroRecord> records) {
  std::string out = "[";
  bool first = true;
  for (const auto& r : records) {
    const ZeroApprox a = zero_approximations(r);
    out += first ? "\n" : ",\n";
    first = false;
    out += "  {\"family\": \"" + std::string(family_name(r.family)) + "\"";
    out += ", \"index\": " + std::to_string(r.index);
    out += ", \"value\": " + fmt_sig(r.value, kJsonDigits);
    out += ", \"bracket_lo\": " + fmt_sig(r.bracket_lo, kJsonDigits);
    out += ", \"bracket_hi\": " + fmt_sig(r.bracket_hi, kJsonDigits);
    out += ", \"residual\": " + fmt_sig(r.residual, kJsonDigits);
    out += ", \"iterations\": " + std::to_string(r.iterations);
    out += ", \"approx_arctan\": " + opt_field(a.arctan, kJsonDigits);
    out += ", \"approx_hermite\": " + opt_field(a.hermite, kJsonDigits);
    out += ", \"approx_gap\": " + opt_field(a.gap, kJsonDigits);
    out += "}";
  }
  out += "\n]\n";
  return out;
}

// ---- sums payloads --------------------------------------------------------

inline std::string sums_csv(std::span<const SeriesResult> results) {
  std::string out = "id,terms_used,partial_sum,tail_estimate,tail_bound,total,closed_form,abs_error,rel_error\n";
  for (const auto& s : results) {
    out += identity_name(s.id);
    out += ',' + std::to_string(s.terms_used);
    out += ',' + fmt_sig(s.partial_sum, kCsvDigits);
    out += ',' + fmt_sig(s.tail_estimate, kCsvDigits);
    out += ',' + fmt_sig(s.tail_bound, kCsvDigits);
    out += ',' + fmt_sig(s.total, kCsvDigits);
    out += ',' + fmt_sig(s.closed_form, kCsvDigits);
    out += ',' + fmt_sig(s.abs_error, kCsvDigits);
    out += ',' + fmt_sig(s.rel_error, kCsvDigits);
    out += '\n';
  }
  return out;
}

inline std::string series_result_json(const SeriesResult& s, const std::string& indent) {
  std::string out = indent + "{\"id\": \"" + identity_name(s.id) + "\"";
  out += ", \"terms_used\": " + std::to_string(s.terms_used);
  out += ", \"partial_sum\": " + fmt_sig(s.partial_sum, kJsonDigits);
  out += ", \"tail_estimate\": " + fmt_sig(s.tail_estimate, kJsonDigits);
  out += ", \"tail_bound\": " + fmt_sig(s.tail_bound, kJsonDigits);
  out += ", \"total\": " + fmt_sig(s.total, kJsonDigits);
  out += ", \"closed_form\": " + fmt_sig(s.closed_form, kJsonDigits);
  out += ", \"abs_error\": " + fmt_sig(s.abs_error, kJsonDigits);
  out += ", \"rel_error\": " + fmt_sig(s.rel_error, kJsonDigits);
  out += "}";
  return out;
}

inline std::string sums_json(std::span<const SeriesResult> results) {
  std::string out = "[";
  bool first = true;
  for (const auto& s : results) {
    out += first ? "\n" : ",\n";
    first = false;
    out += series_result_json(s, "  ");
  }
  out += "\n]\n";
  return out;
}

// ---- extrema payloads -----------------------------------------------------

inline std::string extrema_csv(std::span<const ExtremumRecord> records) {
  std::string out = "n,location,kind,approx_location,gap,residual\n";
  for (const auto& e : records) {
    out += std::to_string(e.n);
    out += ',' + fmt_sig(e.location, kCsvDigits);
    out += ',' + std::string(kind_name(e.kind));
    out += ',' + (e.approx_location ? fmt_sig(*e.approx_location, kCsvDigits) : std::string());
    out += ',' + (e.gap ? fmt_sig(*e.gap, kCsvDigits) : std::string());
    out += ',' + fmt_sig(e.residual, kCsvDigits);
    out += '\n';
  }
  return out;
}

inline std::string extremum_json(const ExtremumRecord& e, const std::string& indent) {
  std::string out = indent + "{\"n\": " + std::to_string(e.n);
  out += ", \"location\": " + fmt_sig(e.location, kJsonDigits);
  out += ", \"kind\": \"" + std::string(kind_name(e.kind)) + "\"";
  out += ", \"approx_location\": " + opt_field(e.approx_location, kJsonDigits);
  out += ", \"gap\": " + opt_field(e.gap, kJsonDigits);
  out += ", \"residual\": " + fmt_sig(e.residual, kJsonDigits);
  out += "}";
  return out;
}

inline std::string extrema_json(std::span<const ExtremumRecord> records) {
  std::string out = "[";
  bool first = true;
  for (const auto& e : records) {
    out += first ? "\n" : ",\n";
    first = false;
    out += extremum_json(e, "  ");
  }
  out += "\n]\n";
  return out;
}

}  // namespace psiroots
