#ifndef GDBLOW_REPORT_HPP
#define GDBLOW_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "gdblow/criterion.hpp"
#include "gdblow/euler_fv.hpp"
#include "gdblow/riemann_ode.hpp"
#include "gdblow/scenario.hpp"

namespace gdblow {

inline constexpr const char* kVersion = "0.1.0";

// Streaming JSON writer with stable key order and %.17g float formatting so
// reports are byte-deterministic for a fixed scenario and version.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v);
    JsonWriter& value_null();
    std::string str() const { return out_; }

  private:
    void separator();
    std::string out_;
    std::vector<bool> first_;   // per nesting level
    bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

struct OdeSummary {
    double x = 0.0;
    std::string outcome;  // bounded | escaped | blowup_estimated
    std::optional<double> T;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double c_drift = 0.0;
    double max_r1 = 0.0, max_r2 = 0.0;
    bool low_confidence = false;
};

struct PdeGridSummary {
    int cells = 0;
    std::optional<double> t_steepen;
    double max_dvdx = 0.0;
    bool breakdown = false;
    double breakdown_t = 0.0;
    int breakdown_cell = -1;
    double mass_defect_rel = 0.0;
    double momentum_defect_rel = 0.0;
};

struct XvalSection {
    std::string status = "NotRun";  // Consistent | Discrepant | NotRun
    std::vector<std::string> details;
};

struct Report {
    Scenario scenario;
    GlobalVerdict verdict;
    std::vector<OdeSummary> ode;
    std::vector<PdeGridSummary> pde;
    std::optional<double> ode_gradient_bound;
    XvalSection xval;
};

// Deterministic except for the generated_at stamp (honors SOURCE_DATE_EPOCH).
std::string report_json(const Report& rep);

// write-temp-then-rename
void write_atomic(const std::string& path, const std::string& content);

// CSV emitters (column orders are part of the file contract)
std::string trajectory_csv(const Trajectory& tr);
std::string ray_csv(const RayTrajectory& tr);
std::string portrait_csv(const std::vector<Trajectory>& polylines);
std::string snapshot_csv(const fv::Snapshot& s);
std::string gradient_csv(const std::vector<fv::GradientSample>& hist);

const char* outcome_name(OutcomeKind k);

}  // namespace gdblow

#endif  // GDBLOW_REPORT_HPP
