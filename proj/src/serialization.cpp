#include "dpplab/serialization.hpp"

#include <cstdio>

#include "dpplab/errors.hpp"

namespace dpplab {
namespace {

void require_version(const Json& j, const char* what) {
  if (!j.is_object() || !j.contains("format_version")) {
    throw Error(ErrorKind::kConfig, std::string(what) + ": missing format_version");
  }
  if (j.at("format_version").get<int>() != kFormatVersion) {
    throw Error(ErrorKind::kConfig, std::string(what) + ": unsupported format_version");
  }
}

}  // namespace

Json to_json(const GroundSpace& space) {
  return Json{{"format_version", kFormatVersion},
              {"label", space.label()},
              {"points", space.points()},
              {"weights", space.weights()}};
}

GroundSpacePtr ground_space_from_json(const Json& j) {
  require_version(j, "ground space");
  try {
    return std::make_shared<const GroundSpace>(j.at("points").get<std::vector<double>>(),
                                               j.at("weights").get<std::vector<double>>(),
                                               j.value("label", std::string{}));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("ground space: ") + e.what());
  }
}

Json to_json(const KernelOperator& k) {
  const Matrix& m = k.entries();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  }
  return Json{{"format_version", kFormatVersion},
              {"space", to_json(*k.space())},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", flat}};
}

KernelOperator kernel_from_json(const Json& j) {
  require_version(j, "kernel");
  GroundSpacePtr space = ground_space_from_json(j.at("space"));
  std::vector<double> flat;
  Eigen::Index rows = 0, cols = 0;
  try {
    rows = j.at("rows").get<Eigen::Index>();
    cols = j.at("cols").get<Eigen::Index>();
    flat = j.at("entries").get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("kernel: ") + e.what());
  }
  if (rows != cols || rows != static_cast<Eigen::Index>(space->size()) ||
      flat.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(ErrorKind::kDimension, "kernel: entry count does not match the ground space");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = flat[static_cast<std::size_t>(i * cols + c)];
  }
  return KernelOperator(space, std::move(m));
}

Json to_json(const ConfigurationLaw& law) {
  Json probs = Json::object();
  for (std::size_t mask = 0; mask < law.probability.size(); ++mask) {
    if (law.probability[mask] != 0.0) probs[std::to_string(mask)] = law.probability[mask];
  }
  return Json{{"format_version", kFormatVersion},
              {"points", law.space ? law.space->size() : 0},
              {"probabilities", probs}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace dpplab
