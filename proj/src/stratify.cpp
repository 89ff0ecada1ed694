#include "qorbit/stratify.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qorbit {

SamplerSpec SamplerSpec::uniform(double lo, double hi) {
  if (!(lo < hi)) throw ParseError("uniform sampler requires lo < hi");
  SamplerSpec s;
  s.kind = Kind::UniformBox;
  s.lo = lo;
  s.hi = hi;
  return s;
}

SamplerSpec SamplerSpec::gaussian(double sigma) {
  if (!(sigma > 0)) throw ParseError("gaussian sampler requires sigma > 0");
  SamplerSpec s;
  s.kind = Kind::Gaussian;
  s.sigma = sigma;
  return s;
}

SamplerSpec SamplerSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (!parts.empty() && parts[0] == "uniform") {
      if (parts.size() == 1) return uniform(-1.0, 1.0);
      if (parts.size() == 3) return uniform(std::stod(parts[1]), std::stod(parts[2]));
    } else if (!parts.empty() && parts[0] == "gaussian") {
      if (parts.size() == 1) return gaussian(1.0);
      if (parts.size() == 2) return gaussian(std::stod(parts[1]));
    }
  } catch (const std::exception&) {
    throw ParseError("invalid sampler spec: " + text);
  }
  throw ParseError("invalid sampler spec: " + text +
                   " (expected uniform[:lo:hi] or gaussian[:sigma])");
}

int poisson_rank_at(const LieAlgebra::Ptr& alg, const Eigen::VectorXd& coords,
                    double rel_threshold) {
  CoadjointFunctional f(alg, coords);
  return matrix_rank(poisson_matrix(f), rel_threshold);
}

StratificationReport stratify(const LieAlgebra::Ptr& alg, const SamplerSpec& sampler,
                              int count, std::uint64_t seed, int examples_per_rank) {
  if (count < 1) throw PreconditionError("sample count must be >= 1");
  StratificationReport report;
  report.algebra = alg->name();
  report.seed = seed;
  report.samples = count;
  const int n = alg->dim();

  for (int s = 0; s < count; ++s) {
    // Per-sample derived seed keeps draws independent of iteration order.
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(s) + 1);
    Eigen::VectorXd coords(n);
    if (sampler.kind == SamplerSpec::Kind::UniformBox) {
      std::uniform_real_distribution<double> dist(sampler.lo, sampler.hi);
      for (int i = 0; i < n; ++i) coords[i] = dist(rng);
    } else {
      std::normal_distribution<double> dist(0.0, sampler.sigma);
      for (int i = 0; i < n; ++i) coords[i] = dist(rng);
    }
    const int rank = poisson_rank_at(alg, coords, report.rank_threshold);
    if (rank % 2 != 0)
      throw std::logic_error("odd Poisson rank encountered; antisymmetry broken");
    report.rank_histogram[rank]++;
    auto& ex = report.examples[rank];
    if (static_cast<int>(ex.size()) < examples_per_rank) ex.push_back(coords);
  }
  return report;
}

std::string StratificationReport::to_json_text() const {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["algebra"] = algebra;
  j["seed"] = seed;
  j["samples"] = samples;
  j["rank_threshold"] = rank_threshold;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [rank, n] : rank_histogram) hist[std::to_string(rank)] = n;
  j["rank_histogram"] = hist;
  nlohmann::ordered_json ex = nlohmann::ordered_json::object();
  for (const auto& [rank, points] : examples) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& p : points) {
      nlohmann::ordered_json coords = nlohmann::ordered_json::array();
      for (int i = 0; i < p.size(); ++i) coords.push_back(p[i]);
      list.push_back(coords);
    }
    ex[std::to_string(rank)] = list;
  }
  j["examples"] = ex;
  return j.dump(2);
}

}  // namespace qorbit
