#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tiadc/config.hpp"

namespace tiadc {

/// The four reference scenarios: no timing error, uncorrected skew, and the
/// two conditioned variants.
enum class Scenario { Ideal, Uncorrected, Scramble, Shape };

std::string scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(const std::string& name);

/// Per-scenario summary row written to metrics.json.
struct MetricsReport {
    std::string scenario;
    double sfdr_db_measured = 0.0;
    double sfdr_db_predicted = 0.0;  // +inf means "no spur predicted"
    std::vector<double> error_mean_per_channel;
    std::vector<double> error_second_moment_per_channel;
    std::uint64_t seed = 0;
    std::string config_hash;
};

struct ScenarioResult {
    Scenario scenario = Scenario::Ideal;
    InterleavedCapture capture;
    SpectrumReport spectrum;
    MetricsReport metrics;
    double noise_floor_bin_power = 0.0;  // mean bin power in the noise window
};

/// Engine spec for one scenario of the given configuration (Ideal zeroes
/// the skews; conditioners attach per their scenario).
SimulationSpec build_simulation_spec(const RunConfig& config, Scenario scenario);

/// Simulate + analyze one scenario. The spectrum comes back annotated with
/// carrier bin, SFDR and the interleave-image spur inventory.
ScenarioResult run_scenario(const RunConfig& config, Scenario scenario);

/// In-band SFDR search range in bins for this configuration: the full
/// Nyquist band for a memoryless sub-ADC, or the configured window around
/// the interleave null for the delta-sigma sub-ADC.
std::pair<int, int> sfdr_band_bins(const RunConfig& config, const SpectrumReport& report);

/// freq_norm,psd_db rows, one per bin; frequencies with 9 significant
/// digits, UTF-8, LF line endings.
void write_spectrum_csv(const std::string& path, const SpectrumReport& report);

/// One JSON object per executed scenario.
void write_metrics_json(const std::string& path, const std::vector<MetricsReport>& metrics);

/// Parameter sweep support.
enum class SweepParam { GSquared, Delta, SkewScale };

std::optional<SweepParam> sweep_param_from_name(const std::string& name);
std::string sweep_param_name(SweepParam p);

/// Scenario a sweep runs when the user does not pin one explicitly.
Scenario default_sweep_scenario(SweepParam p);

struct SweepRow {
    double value = 0.0;
    std::string status;  // "ok" or the reason the row is infeasible
    std::optional<MetricsReport> metrics;
    double noise_floor_bin_power = 0.0;
};

/// Run the scenario once per parameter value. Infeasible values are
/// reported in their row rather than aborting the sweep.
std::vector<SweepRow> run_sweep(const RunConfig& config, SweepParam param,
                                const std::vector<double>& values, Scenario scenario);

void write_sweep_csv(const std::string& path, SweepParam param, Scenario scenario,
                     const std::vector<SweepRow>& rows);

}  // namespace tiadc
