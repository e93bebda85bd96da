#include "halfinv/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "halfinv/spectral_functions.hpp"
#include "json.hpp"

namespace halfinv::io {

namespace {

using nlohmann::json;

json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not a JSON document: ") + e.what());
  }
}

double number(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  if (!it->is_number()) throw FormatError(std::string("field \"") + key + "\" must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw FormatError(std::string("field \"") + key + "\" must be finite");
  return v;
}

std::vector<double> numbers(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  if (!it->is_array()) throw FormatError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> v;
  v.reserve(it->size());
  for (const auto& x : *it) {
    if (!x.is_number()) {
      throw FormatError(std::string("field \"") + key + "\" must hold numbers only");
    }
    v.push_back(x.get<double>());
  }
  return v;
}

GridFunction grid_function(const json& doc) {
  const double a = number(doc, "a");
  const double b = number(doc, "b");
  auto s = numbers(doc, "samples");
  try {
    return GridFunction(a, b, std::move(s));
  } catch (const NumericalError& e) {
    throw FormatError(std::string("bad potential: ") + e.what());
  }
}

void put_grid(json& doc, const GridFunction& q) {
  doc["a"] = q.a();
  doc["b"] = q.b();
  doc["samples"] = q.samples();
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(1) << '\n'; }

json object(const json& doc) {
  if (!doc.is_object()) throw FormatError("top level must be an object");
  return doc;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

PotentialFile read_potential(std::istream& in) {
  const json doc = object(parse(in));
  return {grid_function(doc), number(doc, "h"), number(doc, "H")};
}

void write_potential(std::ostream& out, const PotentialFile& p) {
  json doc;
  put_grid(doc, p.q);
  doc["h"] = p.h;
  doc["H"] = p.H;
  emit(out, doc);
}

MixedDataFile read_mixed_data(std::istream& in) {
  const json doc = object(parse(in));
  GridFunction q = grid_function(doc);
  const double H = number(doc, "H");
  auto spectrum = numbers(doc, "spectrum");
  std::optional<double> omega;
  if (doc.contains("omega")) omega = number(doc, "omega");
  try {
    return {MixedData(std::move(q), H, std::move(spectrum)), omega};
  } catch (const NumericalError& e) {
    throw FormatError(std::string("bad mixed data: ") + e.what());
  }
}

void write_mixed_data(std::ostream& out, const MixedDataFile& m) {
  json doc;
  put_grid(doc, m.data.q_right());
  doc["H"] = m.data.H();
  doc["spectrum"] = m.data.spectrum();
  if (m.omega) doc["omega"] = *m.omega;
  emit(out, doc);
}

void write_report(std::ostream& out, const SolveReport& r) {
  json doc;
  put_grid(doc, r.q_left);
  doc["h"] = r.h;
  const auto& d = r.diagnostics;
  doc["diagnostics"] = {
      {"gram_sine_min", d.gram_sine.smallest_singular_value},
      {"gram_sine_max", d.gram_sine.largest_singular_value},
      {"gram_cosine_min", d.gram_cosine.smallest_singular_value},
      {"gram_cosine_max", d.gram_cosine.largest_singular_value},
      {"residual_sine", d.residual_sine},
      {"residual_cosine", d.residual_cosine},
      {"shift", d.shift},
      {"k0_norm", d.k0_norm},
      {"k_norm", d.k_norm},
      {"K_norm", d.K_norm},
      {"K0_norm", d.K0_norm},
      {"omega", d.omega},
      {"omega_plus", d.omega_plus},
      {"omega_minus", d.omega_minus},
      {"n_aux", d.n_aux},
      {"n_gl", d.n_gl},
  };
  emit(out, doc);
}

Reconstruction read_report(std::istream& in) {
  const json doc = object(parse(in));
  return {grid_function(doc), number(doc, "h")};
}

void write_spectrum_csv(std::ostream& out, const std::vector<double>& rhos,
                        const SpectrumDecomposition& d) {
  out << "n,rho_n,lambda_n,kappa_n,omega\n";
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const double r = rhos[i];
    out << i + 1 << ',' << format_double(r) << ',' << format_double(signed_square(r))
        << ',' << format_double(d.kappas[i]) << ',' << format_double(d.omega) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "trial,ok,d,truth_distance,recon_distance,cauchy_distance,ratio,failure\n";
  for (const auto& row : r.rows) {
    std::string failure = row.failure;
    for (char& c : failure) {
      if (c == ',' || c == '\n' || c == '"') c = ' ';
    }
    out << row.trial << ',' << (row.ok ? 1 : 0) << ',' << format_double(row.d) << ','
        << format_double(row.truth_distance) << ',' << format_double(row.recon_distance) << ','
        << format_double(row.cauchy_distance) << ',' << format_double(row.ratio) << ','
        << failure << '\n';
  }
}

}  // namespace halfinv::io
