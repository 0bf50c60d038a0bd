#include "ncc/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace ncc {

using nlohmann::json;

namespace {

std::string id_to_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    std::ostringstream os;
    os << j.get<double>();
    return os.str();
  }
  throw std::invalid_argument("ids must be strings or numbers");
}

std::vector<std::string> parse_ids(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(std::string(field) + " must be a nonempty array of ids");
  }
  std::vector<std::string> ids;
  ids.reserve(j.size());
  for (const auto& e : j) ids.push_back(id_to_string(e));
  return ids;
}

Mat matrix_from_json(const json& values, int expected) {
  if (!values.is_array() || static_cast<int>(values.size()) != expected) {
    throw std::invalid_argument("metric values must be a " + std::to_string(expected) + "x" +
                                std::to_string(expected) + " matrix");
  }
  Mat m(expected, expected);
  for (int i = 0; i < expected; ++i) {
    const auto& row = values[i];
    if (!row.is_array() || static_cast<int>(row.size()) != expected) {
      throw std::invalid_argument("metric matrix is ragged at row " + std::to_string(i));
    }
    for (int j = 0; j < expected; ++j) m(i, j) = row[j].get<double>();
  }
  return m;
}

Mat matrix_from_coords(const json& metric, const std::vector<std::string>& points,
                       const std::vector<std::string>& facilities) {
  const int dim = metric.at("dim").get<int>();
  if (dim < 1) throw std::invalid_argument("coords metric needs dim >= 1");
  const auto& coords = metric.at("coords");
  const int total = static_cast<int>(points.size() + facilities.size());
  Mat pts(total, dim);
  int row = 0;
  auto fill = [&](const std::string& id) {
    const auto it = coords.find(id);
    if (it == coords.end()) throw std::invalid_argument("missing coords for id " + id);
    if (!it->is_array() || static_cast<int>(it->size()) != dim) {
      throw std::invalid_argument("coords for id " + id + " must have dim entries");
    }
    for (int d = 0; d < dim; ++d) pts(row, d) = (*it)[d].get<double>();
    ++row;
  };
  for (const auto& id : points) fill(id);
  for (const auto& id : facilities) fill(id);

  Mat dist(total, total);
  for (int i = 0; i < total; ++i) {
    dist(i, i) = 0.0;
    for (int j = i + 1; j < total; ++j) {
      const double d = (pts.row(i) - pts.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

Vec vec_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw std::invalid_argument(std::string(field) + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

LoadedInstance load_instance_json(const json& j, bool check_metric) {
  const auto points = parse_ids(j.at("points"), "points");
  const auto facilities = parse_ids(j.at("facilities"), "facilities");
  const int k = j.at("k").get<int>();
  const auto& metric = j.at("metric");
  const std::string type = metric.at("type").get<std::string>();

  Mat dist;
  if (type == "matrix") {
    dist = matrix_from_json(metric.at("values"),
                            static_cast<int>(points.size() + facilities.size()));
  } else if (type == "coords") {
    dist = matrix_from_coords(metric, points, facilities);
  } else {
    throw std::invalid_argument("unknown metric type: " + type);
  }

  MetricInstance inst(points, facilities, std::move(dist), k, check_metric);
  LoadedInstance loaded{std::move(inst), std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  if (j.contains("norms")) {
    const auto& norms = j.at("norms");
    if (norms.contains("inner")) {
      loaded.inner = parse_norm_json(norms.at("inner"), loaded.inst.n());
    }
    if (norms.contains("outer")) {
      loaded.outer = parse_norm_json(norms.at("outer"), loaded.inst.k());
    }
  }
  if (j.contains("rho")) loaded.rho = vec_from_json(j.at("rho"), "rho");
  if (j.contains("mu")) loaded.mu = vec_from_json(j.at("mu"), "mu");
  if (loaded.rho.has_value() != loaded.mu.has_value()) {
    throw std::invalid_argument("rho and mu must be given together");
  }
  if (j.contains("m")) {
    const int m = j.at("m").get<int>();
    if (!loaded.rho.has_value() || loaded.rho->size() != m) {
      throw std::invalid_argument("m must match the length of rho and mu");
    }
  }
  return loaded;
}

LoadedInstance load_instance_file(const std::string& path, bool check_metric) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  json j;
  in >> j;
  return load_instance_json(j, check_metric);
}

json instance_to_json(const MetricInstance& inst, const NormSpec* inner, const NormSpec* outer) {
  json j;
  j["points"] = inst.point_ids();
  j["facilities"] = inst.facility_ids();
  j["k"] = inst.k();
  const int total = inst.n() + inst.num_facilities();
  json values = json::array();
  for (int i = 0; i < total; ++i) {
    json row = json::array();
    for (int c = 0; c < total; ++c) row.push_back(inst.dist()(i, c));
    values.push_back(std::move(row));
  }
  j["metric"] = {{"type", "matrix"}, {"values", std::move(values)}};
  if (inner != nullptr || outer != nullptr) {
    json norms;
    if (inner != nullptr) norms["inner"] = norm_to_json(*inner);
    if (outer != nullptr) norms["outer"] = norm_to_json(*outer);
    j["norms"] = std::move(norms);
  }
  return j;
}

NormSpec parse_norm_json(const json& j, int arity) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "l1") return NormSpec::l1(arity);
  if (type == "linf") return NormSpec::linf(arity);
  if (type == "lp") return NormSpec::lp(j.at("p").get<double>(), arity);
  if (type == "top") return NormSpec::top(j.at("ell").get<int>(), arity);
  if (type == "ordered") {
    Vec w = vec_from_json(j.at("weights"), "weights");
    if (w.size() != arity) {
      throw std::invalid_argument("ordered weights must have length " + std::to_string(arity));
    }
    return NormSpec::ordered(std::move(w));
  }
  throw std::invalid_argument("unknown norm type: " + type);
}

json norm_to_json(const NormSpec& norm) {
  switch (norm.kind()) {
    case NormKind::L1:
      return {{"type", "l1"}};
    case NormKind::Linf:
      return {{"type", "linf"}};
    case NormKind::Lp:
      return {{"type", "lp"}, {"p", norm.p()}};
    case NormKind::Top:
      return {{"type", "top"}, {"ell", norm.ell()}};
    case NormKind::Ordered: {
      std::vector<double> w(norm.weights().data(), norm.weights().data() + norm.weights().size());
      return {{"type", "ordered"}, {"weights", w}};
    }
    case NormKind::Oracle:
      throw std::invalid_argument("oracle norms have no JSON form");
  }
  throw std::logic_error("unreachable norm kind");
}

NormSpec parse_norm_arg(const std::string& text, int arity) {
  if (!text.empty() && text.front() == '{') {
    return parse_norm_json(json::parse(text), arity);
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "l1") return NormSpec::l1(arity);
  if (head == "linf") return NormSpec::linf(arity);
  if (head == "lp") {
    if (tail.empty()) throw std::invalid_argument("lp norm needs a parameter, e.g. lp:2");
    return NormSpec::lp(std::stod(tail), arity);
  }
  if (head == "top") {
    if (tail.empty()) throw std::invalid_argument("top norm needs a parameter, e.g. top:2");
    return NormSpec::top(std::stoi(tail), arity);
  }
  if (head == "ordered") {
    std::vector<double> w;
    std::istringstream is(tail);
    std::string part;
    while (std::getline(is, part, ',')) {
      if (!part.empty()) w.push_back(std::stod(part));
    }
    if (static_cast<int>(w.size()) != arity) {
      throw std::invalid_argument("ordered norm needs " + std::to_string(arity) + " weights");
    }
    Vec wv(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) wv[static_cast<Eigen::Index>(i)] = w[i];
    return NormSpec::ordered(std::move(wv));
  }
  throw std::invalid_argument("unknown norm spec: " + text);
}

}  // namespace ncc
