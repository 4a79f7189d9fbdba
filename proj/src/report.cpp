#include "cpwx/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cpwx/errors.hpp"

namespace cpwx {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string wilcoxon_statistic_text(std::int64_t doubled) {
    const bool negative = doubled < 0;
    const std::uint64_t mag = negative ? -static_cast<std::uint64_t>(doubled)
                                       : static_cast<std::uint64_t>(doubled);
    std::string s = negative ? "-" : "";
    s += std::to_string(mag / 2);
    if (mag % 2 != 0) s += ".5";
    return s;
}

std::string outlier_plan_text(const std::optional<OutlierPlan>& plan) {
    if (!plan) return "none";
    std::string s;
    for (std::size_t i = 0; i < plan->positions.size(); ++i) {
        if (i > 0) s += ';';
        s += format_double(plan->positions[i]);
    }
    s += 'x';
    s += format_double(plan->factor);
    return s;
}

namespace {

std::ofstream open_output(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + p.string());
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& p) {
    out.flush();
    if (!out) throw IoError("failed writing output file: " + p.string());
}

} // namespace

void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());

    const ExperimentSpec& spec = result.spec;
    const ChangePointConfig& cfg = spec.config;

    {
        const fs::path p = dir / "summary.csv";
        auto out = open_output(p);
        out << "method,n,theta,delta,rho,innovation,outliers,R,mean,sd\n";
        for (const McSummary& s : result.summaries) {
            out << method_name(s.method) << ',' << cfg.n << ',' << format_double(cfg.theta)
                << ',' << format_double(cfg.delta) << ',' << format_double(cfg.rho) << ','
                << innovation_name(cfg.innovation) << ',' << outlier_plan_text(cfg.outliers)
                << ',' << s.replications << ',' << format_double(s.mean_theta_hat) << ','
                << format_double(s.sd_theta_hat) << '\n';
        }
        finish_output(out, p);
    }

    {
        const fs::path p = dir / "histogram.csv";
        auto out = open_output(p);
        out << "method,bin_left,bin_right,count\n";
        for (const McSummary& s : result.summaries) {
            for (std::size_t b = 0; b + 1 < s.bin_edges.size(); ++b) {
                out << method_name(s.method) << ',' << format_double(s.bin_edges[b]) << ','
                    << format_double(s.bin_edges[b + 1]) << ',' << s.counts[b] << '\n';
            }
        }
        finish_output(out, p);
    }

    {
        const fs::path p = dir / "outcomes.csv";
        auto out = open_output(p);
        out << "rep_index,method,k_hat,theta_hat\n";
        for (const ReplicationOutcome& o : result.outcomes) {
            for (const EstimateResult& e : o.estimates) {
                out << o.rep_index << ',' << method_name(e.method) << ',' << e.k_hat << ','
                    << format_double(e.theta_hat) << '\n';
            }
        }
        finish_output(out, p);
    }
}

} // namespace cpwx
