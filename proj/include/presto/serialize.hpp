#pragma once

#include <string>

#include <json.hpp>

#include "presto/core.hpp"
#include "presto/ingest.hpp"
#include "presto/sampler.hpp"

// JSON glue. ordered_json keeps insertion order, which makes output
// byte-stable across runs; every serializer here must insert fields in a
// fixed order.
namespace presto {

using Json = nlohmann::ordered_json;

inline void to_json(Json& j, const IngestReport& r) {
    j = Json{{"lines_read", r.lines_read},
             {"edges_kept", r.edges_kept},
             {"self_loops_dropped", r.self_loops_dropped},
             {"malformed_lines", r.malformed_lines},
             {"distinct_nodes", r.distinct_nodes}};
}

inline void to_json(Json& j, const NetworkStats& s) {
    j = Json{{"timespan", s.timespan},
             {"kappa_hat", s.kappa_hat},
             {"m_hat", s.m_hat},
             {"delta_T1", s.delta_T1},
             {"delta_T2", s.delta_T2},
             {"t_last_start", s.t_last_start}};
}

inline void to_json(Json& j, const EstimatorConfig& c) {
    j = Json{{"variant", std::string(1, variant_letter(c.variant))},
             {"c", c.c},
             {"delta", c.delta},
             {"s", c.s},
             {"seed", c.seed},
             {"workers", c.workers}};
}

inline void to_json(Json& j, const EstimateResult& r) {
    j = Json{{"estimate", r.estimate},
             {"per_iteration", r.per_iteration},
             {"empirical_variance", r.empirical_variance},
             {"iterations", r.iterations},
             {"elapsed", r.elapsed},
             {"config", r.config}};
}

}  // namespace presto
