#pragma once

#include "hhgsq/analysis.hpp"
#include "hhgsq/config.hpp"

#include <string>
#include <vector>

namespace hhgsq {

/// Run-level context embedded in every report next to the resolved config.
struct ReportMeta {
    std::vector<std::string> warnings;
    int max_subintervals_used = 0;
};

ReportMeta pipeline_meta(const Pipeline& pipeline);

std::string spectrum_json(const RunConfig& cfg, const std::vector<SpectrumRecord>& spectrum, const ReportMeta& meta);
std::string single_mode_json(const RunConfig& cfg, const SqueezingReport& rep, const ReportMeta& meta);
std::string two_mode_json(const RunConfig& cfg, const TwoModeReport& rep, const ReportMeta& meta);
std::string herald_json(const RunConfig& cfg, const HeraldReport& rep, const ReportMeta& meta);
std::string crosscheck_json(const RunConfig& cfg, const std::vector<CrosscheckReport>& reps, const ReportMeta& meta);
std::string hierarchy_json(const RunConfig& cfg, const HierarchyReport& rep, const ReportMeta& meta);

std::string spectrum_csv(const std::vector<SpectrumRecord>& spectrum);
/// q, theta, variance_min, variance_orthogonal, product, r, db for both backends.
std::string fig1_csv(const SqueezingReport& rep);
/// n_at_gl2, q, r, db over the sweep.
std::string fig2a_csv(const SqueezingReport& rep);
std::string fig3a_csv(const TwoModeReport& rep);
std::string fig3b_csv(const TwoModeReport& rep);
std::string herald_summary_csv(const HeraldReport& rep);
/// Columns x,p,w with p as the slow index.
std::string wigner_csv(const WignerGrid& grid);

/// Writes text to path, creating parent directories.
void write_text_file(const std::string& path, const std::string& text);

} // namespace hhgsq
