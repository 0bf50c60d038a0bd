#ifndef NCC_IO_HPP
#define NCC_IO_HPP

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "ncc/layered_ball.hpp"

namespace ncc {

// Instance JSON:
//   {"points":[id...], "facilities":[id...], "k":int,
//    "metric":{"type":"matrix","values":[[...]]}
//           | {"type":"coords","dim":int,"coords":{id:[...]}}}
// Optional extensions: top-level "rho"/"mu" arrays (layered-ball scaling
// vectors) and a "norms":{"inner":...,"outer":...} object used by bench
// corpora. Ids may be JSON strings or numbers.
struct LoadedInstance {
  MetricInstance inst;
  std::optional<NormSpec> inner;
  std::optional<NormSpec> outer;
  std::optional<Vec> rho;
  std::optional<Vec> mu;
};

LoadedInstance load_instance_json(const nlohmann::json& j, bool check_metric = true);
LoadedInstance load_instance_file(const std::string& path, bool check_metric = true);

nlohmann::json instance_to_json(const MetricInstance& inst, const NormSpec* inner = nullptr,
                                const NormSpec* outer = nullptr);

// Norm JSON: {"type":"l1"} | {"type":"linf"} | {"type":"lp","p":num}
//          | {"type":"top","ell":int} | {"type":"ordered","weights":[...]}.
// Oracle norms are library-only and have no JSON form.
NormSpec parse_norm_json(const nlohmann::json& j, int arity);
nlohmann::json norm_to_json(const NormSpec& norm);

// Shorthand accepted on the command line in addition to raw JSON:
// "l1", "linf", "lp:2.5", "top:2", "ordered:3,1,1".
NormSpec parse_norm_arg(const std::string& text, int arity);

}  // namespace ncc

#endif  // NCC_IO_HPP
