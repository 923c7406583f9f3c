#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "calogero/errors.hpp"
#include "calogero/radical.hpp"
#include "calogero/rdm.hpp"
#include "calogero/spectra.hpp"
#include "calogero/tensor.hpp"

namespace calogero::io {

using nlohmann::json;

// Mandated first line of every CSV file.
inline std::string csv_header(const ModelSpec& spec, unsigned p, unsigned digits) {
  return "# calogero-exact N=" + std::to_string(spec.N) + " nu=" + std::to_string(spec.nu) +
         " p=" + std::to_string(p) + " digits=" + std::to_string(digits);
}

// Radical as decimal-string triple; value = numerator/denominator * sqrt(radicand).
inline json radical_json(const Radical& a) {
  return json{{"numerator", a.coefficient.get_num().get_str()},
              {"denominator", a.coefficient.get_den().get_str()},
              {"radicand", a.radicand.get_str()}};
}

inline json spectrum_record(const EntanglementSpectrum& spectrum, const Real& S, const Real& L,
                            const std::optional<Real>& Q) {
  json eig = json::array();
  for (const Real& v : spectrum.values) eig.push_back(v.to_string(spectrum.digits));
  json rec{{"N", spectrum.spec.N},     {"nu", spectrum.spec.nu},
           {"p", spectrum.p},          {"digits", spectrum.digits},
           {"eigenvalues", eig},       {"S", S.to_string(spectrum.digits)},
           {"L", L.to_string(spectrum.digits)}, {"degenerate", !Q.has_value()}};
  if (Q)
    rec["Q"] = Q->to_string(spectrum.digits);
  else
    rec["Q"] = nullptr;
  return rec;
}

// Plain-text decimal dump of the exact matrix for human inspection.
inline std::string dump_matrix(const ReducedDensityMatrix& rdm, unsigned digits = 12) {
  mpfr_prec_t bits = Real::bits_for_digits(digits);
  Real scale = Real::of(rdm.scale, bits);
  std::vector<Real> rootf;
  rootf.reserve(rdm.dim);
  for (unsigned i = 0; i < rdm.dim; ++i) rootf.push_back(sqrt(Real::of(rdm.F[i], bits)));
  std::ostringstream os;
  os << csv_header(rdm.spec, rdm.p, digits).substr(2) << "\n";
  for (unsigned i = 0; i < rdm.dim; ++i) {
    for (unsigned j = 0; j < rdm.dim; ++j) {
      if (j) os << ' ';
      if (rdm.s_at(i, j) == 0)
        os << '0';
      else
        os << (scale * Real::of(rdm.s_at(i, j), bits) * rootf[i] * rootf[j]).to_string(digits);
    }
    os << "\n";
  }
  return os.str();
}

namespace detail {

inline int sort_parity(const std::vector<unsigned>& arr) {
  unsigned inv = 0;
  for (std::size_t a = 0; a < arr.size(); ++a)
    for (std::size_t b = a + 1; b < arr.size(); ++b)
      if (arr[a] > arr[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ExitCode::failure, "cannot write " + path.string());
  os << content;
}

inline json read_json(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ExitCode::failure, "cannot read " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw Error(ExitCode::failure, "bad cache file " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace detail

// Tensor cache layout: one record per nonzero sorted multi-index (indices
// ascending, integer part as a decimal string) plus the global rational
// scale. Unsorted entries are reconstructed on load — amplitudes are
// permutation (anti)symmetric, so the sorted records determine the tensor.
inline void save_tensor(const CoefficientTensor& tensor, const std::filesystem::path& path) {
  json records = json::array();
  for (const auto& [key, b] : tensor.terms) {
    std::vector<unsigned> q = unpack(key, tensor.spec.N);
    if (!std::is_sorted(q.begin(), q.end())) continue;
    records.push_back(json{{"q", q}, {"b", b.get_str()}});
  }
  json j{{"kind", "tensor"},
         {"N", tensor.spec.N},
         {"nu", tensor.spec.nu},
         {"scale_num", tensor.scale.get_num().get_str()},
         {"scale_den", tensor.scale.get_den().get_str()},
         {"records", records}};
  detail::write_file(path, j.dump(1) + "\n");
}

inline CoefficientTensor load_tensor(const ModelSpec& spec, const std::filesystem::path& path) {
  json j = detail::read_json(path);
  if (j.value("kind", "") != "tensor" || j.value("N", 0u) != spec.N ||
      j.value("nu", 0u) != spec.nu)
    throw Error(ExitCode::failure, "cache file " + path.string() + " does not hold tensor " +
                                       spec.label());
  CoefficientTensor tensor;
  tensor.spec = spec;
  tensor.scale = rational(Integer(j.at("scale_num").get<std::string>()),
                          Integer(j.at("scale_den").get<std::string>()));
  bool odd = spec.fermionic();
  for (const json& rec : j.at("records")) {
    std::vector<unsigned> q = rec.at("q").get<std::vector<unsigned>>();
    Integer b(rec.at("b").get<std::string>());
    if (q.size() != spec.N || !std::is_sorted(q.begin(), q.end()) || b == 0)
      throw Error(ExitCode::failure, "bad tensor record in " + path.string());
    do {
      Integer value = odd && detail::sort_parity(q) < 0 ? Integer(-b) : b;
      tensor.terms.emplace_back(pack(q), std::move(value));
    } while (std::next_permutation(q.begin(), q.end()));
  }
  std::sort(tensor.terms.begin(), tensor.terms.end(),
            [](const auto& a, const auto& b2) { return a.first < b2.first; });
  verify_normalization(tensor);
  return tensor;
}

// RDM cache mirrors the tensor layout: upper-triangle nonzero integer parts
// keyed (N, nu, p); the front weights are recomputed on load.
inline void save_rdm(const ReducedDensityMatrix& rdm, const std::filesystem::path& path) {
  json records = json::array();
  for (unsigned i = 0; i < rdm.dim; ++i)
    for (unsigned j2 = i; j2 < rdm.dim; ++j2)
      if (rdm.s_at(i, j2) != 0)
        records.push_back(json{{"i", i}, {"j", j2}, {"s", rdm.s_at(i, j2).get_str()}});
  json j{{"kind", "rdm"},
         {"N", rdm.spec.N},
         {"nu", rdm.spec.nu},
         {"p", rdm.p},
         {"dim", rdm.dim},
         {"scale_num", rdm.scale.get_num().get_str()},
         {"scale_den", rdm.scale.get_den().get_str()},
         {"records", records}};
  detail::write_file(path, j.dump(1) + "\n");
}

inline ReducedDensityMatrix load_rdm(const ModelSpec& spec, unsigned p,
                                     const std::filesystem::path& path) {
  json j = detail::read_json(path);
  if (j.value("kind", "") != "rdm" || j.value("N", 0u) != spec.N ||
      j.value("nu", 0u) != spec.nu || j.value("p", 0u) != p)
    throw Error(ExitCode::failure,
                "cache file " + path.string() + " does not hold the " + spec.label() +
                    " p=" + std::to_string(p) + " matrix");
  ReducedDensityMatrix rdm;
  rdm.spec = spec;
  rdm.p = p;
  rdm.dim = j.at("dim").get<unsigned>();
  rdm.scale = rational(Integer(j.at("scale_num").get<std::string>()),
                       Integer(j.at("scale_den").get<std::string>()));
  rdm.S.assign(std::size_t(rdm.dim) * rdm.dim, Integer(0));
  unsigned D = spec.basis_size();
  std::vector<Integer> w = calogero::detail::slot_weights(D);
  rdm.F.resize(rdm.dim);
  for (std::size_t i = 0; i < rdm.dim; ++i)
    rdm.F[i] = calogero::detail::front_weight(from_flat(i, D, p), p, w);
  for (const json& rec : j.at("records")) {
    unsigned i = rec.at("i").get<unsigned>(), j2 = rec.at("j").get<unsigned>();
    if (i >= rdm.dim || j2 >= rdm.dim || i > j2)
      throw Error(ExitCode::failure, "bad matrix record in " + path.string());
    Integer s(rec.at("s").get<std::string>());
    rdm.s_at(i, j2) = s;
    rdm.s_at(j2, i) = std::move(s);
  }
  rdm.verify_trace();
  return rdm;
}

// Cache directory: explicit flag wins, then the environment, then none.
inline std::optional<std::filesystem::path> cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return std::filesystem::path(flag_value);
  if (const char* env = std::getenv("CALOGERO_CACHE_DIR"); env && *env)
    return std::filesystem::path(env);
  return std::nullopt;
}

inline std::filesystem::path tensor_cache_path(const std::filesystem::path& dir,
                                               const ModelSpec& spec) {
  return dir / ("tensor_N" + std::to_string(spec.N) + "_nu" + std::to_string(spec.nu) + ".json");
}

inline std::filesystem::path rdm_cache_path(const std::filesystem::path& dir,
                                            const ModelSpec& spec, unsigned p) {
  return dir / ("rdm_N" + std::to_string(spec.N) + "_nu" + std::to_string(spec.nu) + "_p" +
                std::to_string(p) + ".json");
}

}  // namespace calogero::io
