#include "accretive/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace accretive {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json check_json(const CheckResult& c) {
  Json j;
  j["id"] = c.id;
  j["claim"] = c.claim;
  j["n"] = c.n;
  j["status"] = std::string(to_string(c.status));
  j["pass"] = c.pass();
  if (c.evaluated()) {
    j["lhs"] = number(c.lhs);
    j["rhs"] = number(c.rhs);
    j["margin"] = number(c.margin);
    j["tolerance"] = number(c.tolerance);
  }
  if (!c.note.empty()) j["note"] = c.note;
  Json details = Json::object();
  for (const auto& [key, value] : c.details) details[key] = number(value);
  j["details"] = details;
  return j;
}

std::string format(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::filesystem::path prepare(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw Error(Errc::IoError, "cannot create output directory " + dir);
  return std::filesystem::path(dir);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  out << body;
  out.flush();
  if (!out) throw Error(Errc::IoError, "failed writing " + path.string());
}

std::string csv_name(const SpectrumRecord& s, int n) {
  return "spectrum_" + std::string(s.op == "R_W" ? "RW" : s.op) + "_n" + std::to_string(n) + ".csv";
}

}  // namespace

std::string report_json(const VerificationReport& report) {
  Json root;
  root["schema"] = 1;

  Json config = Json::object();
  for (const auto& [key, value] : echo(report.config)) config[key] = value;
  root["config"] = config;

  Json constants = Json::array(), sector = Json::array(), norms = Json::array(), spectra = Json::array(),
       fits = Json::array(), checks = Json::array(), errors = Json::array();
  for (const SizeReport& s : report.sizes) {
    if (s.constants) {
      const auto& c = *s.constants;
      constants.push_back({{"n", s.n}, {"C0", number(c.C0)}, {"C1", number(c.C1)}, {"C2", number(c.C2)},
                           {"C3", number(c.C3)}, {"C4", number(c.C4)}});
    }
    if (s.sector) {
      const auto& p = *s.sector;
      sector.push_back({{"n", s.n}, {"epsilon", number(p.epsilon)}, {"k", number(p.k)}, {"gamma", number(p.gamma)},
                        {"xi", number(p.xi)}, {"theta", number(p.theta)}});
    }
    if (s.norms) {
      const auto& f = *s.norms;
      norms.push_back({{"n", s.n}, {"norm_B", number(f.norm_B)}, {"norm_S", number(f.norm_S)},
                       {"norm_S_inverse", number(f.norm_S_inverse)}, {"aperture", number(f.aperture)}});
    }
    for (const SpectrumRecord& sp : s.spectra) {
      Json values = Json::array();
      for (const Complex& z : sp.eigenvalues) values.push_back({number(z.real()), number(z.imag())});
      Json sv = Json::array();
      for (double v : sp.s_numbers) sv.push_back(number(v));
      spectra.push_back({{"n", s.n}, {"operator", sp.op}, {"eigenvalues", values}, {"s_numbers", sv}});
    }
    if (s.fit) {
      Json converse = Json::array();
      for (const auto& [p, holds] : s.fit->converse) converse.push_back({{"p", p}, {"mu_p_exceeds_one", holds}});
      fits.push_back({{"n", s.n},
                      {"mu_hat", number(s.fit->fit.mu_hat)},
                      {"window", {s.fit->fit.first, s.fit->fit.last}},
                      {"r_squared", number(s.fit->fit.r_squared)},
                      {"classification", s.fit->classification},
                      {"converse", converse}});
    }
  }
  for (const CheckResult* c : report.all_checks()) checks.push_back(check_json(*c));
  for (const StageError& e : report.errors)
    errors.push_back({{"n", e.n}, {"stage", e.stage}, {"code", e.code}, {"message", e.message}});

  root["constants"] = constants;
  root["sector"] = sector;
  root["factorization_norms"] = norms;
  root["spectra"] = spectra;
  root["checks"] = checks;
  root["fits"] = fits;
  root["errors"] = errors;
  root["pass"] = report.pass();
  return root.dump(2) + "\n";
}

std::string spectrum_csv(const SpectrumRecord& s) {
  std::string out = "index,re,im,modulus,s_number\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const Complex z = s.eigenvalues[i];
    const double sv = i < s.s_numbers.size() ? s.s_numbers[i] : 0.0;
    out += std::to_string(i + 1) + "," + format(z.real()) + "," + format(z.imag()) + "," + format(std::abs(z)) + "," +
           format(sv) + "\n";
  }
  return out;
}

std::vector<std::string> write_spectra_csv(const std::vector<SizeReport>& sizes, const std::string& dir) {
  const auto root = prepare(dir);
  std::vector<std::string> written;
  for (const SizeReport& s : sizes) {
    for (const SpectrumRecord& sp : s.spectra) {
      const auto path = root / csv_name(sp, s.n);
      write_file(path, spectrum_csv(sp));
      written.push_back(path.string());
    }
  }
  return written;
}

std::vector<std::string> emit_report(const VerificationReport& report, const std::string& dir, ReportFormat format) {
  const auto root = prepare(dir);
  std::vector<std::string> written;
  if (format != ReportFormat::Csv) {
    const auto path = root / "report.json";
    write_file(path, report_json(report));
    written.push_back(path.string());
  }
  if (format != ReportFormat::Json) {
    const auto csv = write_spectra_csv(report.sizes, dir);
    written.insert(written.end(), csv.begin(), csv.end());
  }
  return written;
}

}  // namespace accretive
