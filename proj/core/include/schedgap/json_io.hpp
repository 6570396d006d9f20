#pragma once

#include <string>
#include <vector>

#include "schedgap/gap.hpp"
#include "schedgap/instance.hpp"
#include "schedgap/kpartite.hpp"
#include "schedgap/lp.hpp"
#include "schedgap/schedule.hpp"
#include "schedgap/validate.hpp"

namespace schedgap {

// JSON conventions: rationals are canonical "num/den" strings (parsers also
// accept plain integers and decimals), counts are JSON numbers up to 2^53
// and decimal strings beyond (parsers accept both).  Serializers emit a
// stable field order and 2-space indentation, so equal values produce
// byte-identical files.  Parsers throw ParameterError on malformed
// documents and run the target type's own checks (so structurally broken
// data is rejected on load).

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

std::string schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const std::string& text);

std::string graph_to_json(const KPartiteGraph& g);
KPartiteGraph graph_from_json(const std::string& text);

std::string witness_to_json(const PartitionWitness& w);
PartitionWitness witness_from_json(const std::string& text);

std::string bipartite_to_json(const BipartiteGraph& b);
BipartiteGraph bipartite_from_json(const std::string& text);

std::string bipartition_to_json(const BipartitePartition& p);
BipartitePartition bipartition_from_json(const std::string& text);

std::string lp_solution_to_json(const LpSolution& sol);
LpSolution lp_solution_from_json(const std::string& text);

std::string farkas_to_json(const FarkasCertificate& cert);
FarkasCertificate farkas_from_json(const std::string& text);

std::string validation_report_to_json(const ValidationReport& report);
std::string lp_check_report_to_json(const LpProblem& problem,
                                    const LpCheckReport& report);
std::string lp_result_to_json(const LpResult& result);
std::string min_t_result_to_json(const MinTResult& result);

std::string gap_report_to_json(const GapReport& report);
std::string gap_reports_to_csv(const std::vector<GapReport>& reports);

}  // namespace schedgap
