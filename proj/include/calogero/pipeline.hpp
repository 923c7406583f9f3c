#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <tuple>
#include <utility>

#include "calogero/density.hpp"
#include "calogero/io.hpp"
#include "calogero/rdm.hpp"
#include "calogero/spectra.hpp"
#include "calogero/tensor.hpp"

namespace calogero {

struct EntropyReport {
  EntanglementSpectrum spectrum;
  Real S;
  Real L;
  std::optional<Real> Q;  // absent when the spectrum is JRW-degenerate

  bool degenerate() const { return !Q.has_value(); }
};

// One run's working state: limits, precision, worker count, optional disk
// cache, and memoized exact objects. Tensors and matrices are immutable once
// built, so handing out references is safe; the maps double as the registry
// of everything assembled during a session.
class Session {
public:
  Limits limits;
  unsigned workers = 1;
  unsigned digits = 50;
  std::optional<std::filesystem::path> cache;

  const CoefficientTensor& tensor(const ModelSpec& spec) {
    auto key = std::pair(spec.N, spec.nu);
    auto it = tensors_.find(key);
    if (it != tensors_.end()) return it->second;
    if (cache) {
      auto path = io::tensor_cache_path(*cache, spec);
      if (std::filesystem::exists(path))
        return tensors_.emplace(key, io::load_tensor(spec, path)).first->second;
    }
    CoefficientTensor built = expansion_coefficients(spec, limits, workers);
    if (cache) {
      std::filesystem::create_directories(*cache);
      io::save_tensor(built, io::tensor_cache_path(*cache, spec));
    }
    return tensors_.emplace(key, std::move(built)).first->second;
  }

  const ReducedDensityMatrix& rdm(const ModelSpec& spec, unsigned p) {
    auto key = std::tuple(spec.N, spec.nu, p);
    auto it = rdms_.find(key);
    if (it != rdms_.end()) return it->second;
    if (cache) {
      auto path = io::rdm_cache_path(*cache, spec, p);
      if (std::filesystem::exists(path))
        return rdms_.emplace(key, io::load_rdm(spec, p, path)).first->second;
    }
    ReducedDensityMatrix built = assemble_rdm(tensor(spec), p, limits);
    if (cache) {
      std::filesystem::create_directories(*cache);
      io::save_rdm(built, io::rdm_cache_path(*cache, spec, p));
    }
    return rdms_.emplace(key, std::move(built)).first->second;
  }

  EntanglementSpectrum spectrum(const ModelSpec& spec, unsigned p) {
    return eigenvalues(rdm(spec, p), digits);
  }

  // Spectrum plus all three entropies; a JRW-degenerate spectrum yields a
  // report without Q rather than an error.
  EntropyReport analyze(const ModelSpec& spec, unsigned p) {
    EntropyReport report{spectrum(spec, p), Real(), Real(), std::nullopt};
    report.S = von_neumann_entropy(report.spectrum.values, digits);
    report.L = linear_entropy(report.spectrum.values, digits);
    try {
      report.Q = jrw_subentropy(report.spectrum.values, digits);
    } catch (const DegenerateSpectrum&) {
    }
    return report;
  }

  DensityProfile density(const ModelSpec& spec, double lo = -6.0, double hi = 6.0,
                         unsigned points = 400) {
    return density_profile(rdm(spec, 1), lo, hi, points, digits);
  }

  // Long sweeps can drop a tensor once its matrices are built; it is rebuilt
  // (or reloaded from the disk cache) on the next request.
  void release_tensor(const ModelSpec& spec) { tensors_.erase(std::pair(spec.N, spec.nu)); }

  // Registry of every matrix assembled in this session (for property sweeps).
  const std::map<std::tuple<unsigned, unsigned, unsigned>, ReducedDensityMatrix>& assembled()
      const {
    return rdms_;
  }

private:
  std::map<std::pair<unsigned, unsigned>, CoefficientTensor> tensors_;
  std::map<std::tuple<unsigned, unsigned, unsigned>, ReducedDensityMatrix> rdms_;
};

}  // namespace calogero
