#include "bowtie/report.hpp"

#include <cstdio>
#include <sstream>

namespace bowtie {

namespace {

std::string pad_left(const std::string& text, std::size_t width) {
  if (text.size() >= width) return text;
  return std::string(width - text.size(), ' ') + text;
}

std::string pad_right(const std::string& text, std::size_t width) {
  if (text.size() >= width) return text;
  return text + std::string(width - text.size(), ' ');
}

/// Rows of (label, per-case values) rendered as an aligned block.
class Table {
 public:
  explicit Table(std::vector<std::string> case_ids) : case_ids_(std::move(case_ids)) {}

  void add(std::string label, std::vector<std::string> values) {
    rows_.emplace_back(std::move(label), std::move(values));
  }

  void write(std::ostringstream& out) const {
    std::size_t label_width = 0;
    std::size_t value_width = 8;
    for (const auto& id : case_ids_) value_width = std::max(value_width, id.size());
    for (const auto& [label, values] : rows_) {
      label_width = std::max(label_width, label.size());
      for (const auto& value : values) value_width = std::max(value_width, value.size());
    }
    out << pad_right("", label_width);
    for (const auto& id : case_ids_) out << "  " << pad_left(id, value_width);
    out << "\n";
    for (const auto& [label, values] : rows_) {
      out << pad_right(label, label_width);
      for (const auto& value : values) out << "  " << pad_left(value, value_width);
      out << "\n";
    }
  }

 private:
  std::vector<std::string> case_ids_;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows_;
};

std::vector<std::string> phd_labels(const EvaluationRun& run) {
  for (const auto& evaluation : run.cases) {
    const PhdFrequencies* phd = nullptr;
    if (evaluation.quant) phd = &evaluation.quant->phd;
    if (evaluation.semi) phd = &evaluation.semi->phd;
    if (phd) {
      std::vector<std::string> labels;
      for (const auto& [label, value] : *phd) labels.push_back(label);
      return labels;
    }
  }
  return {};
}

std::string trim_number(double value, const char* format) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

}  // namespace

std::string format_frequency(double value) { return trim_number(value, "%.2E"); }

std::string format_factor(double value) { return trim_number(value, "%.2f"); }

std::string render_evaluation(const EvaluationRun& run, OutputFormat format) {
  std::vector<std::string> case_ids;
  for (const auto& evaluation : run.cases) case_ids.push_back(evaluation.case_id);
  const std::vector<std::string> phds = phd_labels(run);
  const bool has_quant = !run.cases.empty() && run.cases.front().quant.has_value();
  const bool has_semi = !run.cases.empty() && run.cases.front().semi.has_value();

  const auto quant_barrier = [&](const CaseEvaluation& evaluation,
                                 const std::string& id) -> const QuantBarrierMetrics& {
    for (const auto& [barrier_id, metrics] : evaluation.quant->barriers) {
      if (barrier_id == id) return metrics;
    }
    throw ModelError("barrier '" + id + "' missing from quantitative results");
  };
  const auto semi_barrier = [&](const CaseEvaluation& evaluation,
                                const std::string& id) -> const SemiBarrierMetrics& {
    for (const auto& [barrier_id, metrics] : evaluation.semi->barriers) {
      if (barrier_id == id) return metrics;
    }
    throw ModelError("barrier '" + id + "' missing from semi-quantitative results");
  };

  std::ostringstream out;
  if (format == OutputFormat::csv) {
    out << "approach,metric";
    for (const auto& id : case_ids) out << "," << id;
    out << "\n";
    const auto row = [&](const char* approach, const std::string& metric,
                         auto&& value_of) {
      out << approach << "," << metric;
      for (const auto& evaluation : run.cases) out << "," << value_of(evaluation);
      out << "\n";
    };
    if (has_quant) {
      for (const auto& id : run.barrier_order) {
        row("quant", id + ".pfd_avg", [&](const CaseEvaluation& e) {
          return format_frequency(quant_barrier(e, id).pfd_avg);
        });
        row("quant", id + ".factor", [&](const CaseEvaluation& e) {
          return format_factor(quant_barrier(e, id).risk_reduction_factor);
        });
      }
      row("quant", "ERC", [&](const CaseEvaluation& e) {
        return format_frequency(e.quant->erc_per_year);
      });
      for (const auto& phd : phds) {
        row("quant", phd, [&](const CaseEvaluation& e) {
          return format_frequency(e.quant->phd.at(phd));
        });
      }
    }
    if (has_semi) {
      for (const auto& id : run.barrier_order) {
        row("semi", id + ".nc", [&](const CaseEvaluation& e) {
          return to_string(semi_barrier(e, id).nc);
        });
        row("semi", id + ".factor", [&](const CaseEvaluation& e) {
          return format_factor(semi_barrier(e, id).risk_reduction_factor);
        });
      }
      row("semi", "ERC", [&](const CaseEvaluation& e) {
        return format_frequency(e.semi->erc_per_year);
      });
      for (const auto& phd : phds) {
        row("semi", phd, [&](const CaseEvaluation& e) {
          return format_frequency(e.semi->phd.at(phd));
        });
      }
    }
    return out.str();
  }

  out << "model " << run.model_hash << " | horizon " << run.horizon_hours
      << " h | grid step " << run.grid_step_hours << " h\n";

  const auto frequencies_table = [&](auto&& erc_of, auto&& phd_of) {
    Table table(case_ids);
    std::vector<std::string> values;
    for (const auto& evaluation : run.cases)
      values.push_back(format_frequency(erc_of(evaluation)));
    table.add("ERC", values);
    for (const auto& phd : phds) {
      values.clear();
      for (const auto& evaluation : run.cases)
        values.push_back(format_frequency(phd_of(evaluation, phd)));
      table.add(phd, values);
    }
    return table;
  };

  if (has_quant) {
    out << "\n== Quantitative approach ==\n\nBarrier PFDavg\n";
    Table pfd(case_ids);
    Table factors(case_ids);
    for (const auto& id : run.barrier_order) {
      std::vector<std::string> pfd_values;
      std::vector<std::string> factor_values;
      for (const auto& evaluation : run.cases) {
        const auto& metrics = quant_barrier(evaluation, id);
        pfd_values.push_back(format_frequency(metrics.pfd_avg));
        factor_values.push_back(format_factor(metrics.risk_reduction_factor));
      }
      pfd.add(id, pfd_values);
      factors.add(id, factor_values);
    }
    pfd.write(out);
    out << "\nRisk-reduction factors\n";
    factors.write(out);
    out << "\nAnnual frequencies (per year)\n";
    frequencies_table([](const CaseEvaluation& e) { return e.quant->erc_per_year; },
                      [](const CaseEvaluation& e, const std::string& phd) {
                        return e.quant->phd.at(phd);
                      })
        .write(out);
  }

  if (has_semi) {
    out << "\n== Semi-quantitative approach ==\n\nConfidence levels\n";
    Table nc(case_ids);
    Table factors(case_ids);
    for (const auto& id : run.barrier_order) {
      std::vector<std::string> nc_values;
      std::vector<std::string> factor_values;
      for (const auto& evaluation : run.cases) {
        const auto& metrics = semi_barrier(evaluation, id);
        nc_values.push_back(to_string(metrics.nc));
        factor_values.push_back(format_factor(metrics.risk_reduction_factor));
      }
      nc.add(id, nc_values);
      factors.add(id, factor_values);
    }
    nc.write(out);
    out << "\nRisk-reduction factors\n";
    factors.write(out);
    out << "\nAnnual frequencies (per year)\n";
    frequencies_table([](const CaseEvaluation& e) { return e.semi->erc_per_year; },
                      [](const CaseEvaluation& e, const std::string& phd) {
                        return e.semi->phd.at(phd);
                      })
        .write(out);
  }
  return out.str();
}

std::string render_comparison_csv(const EvaluationRun& run) {
  std::ostringstream out;
  out << "case,quant_erc_per_year,semi_erc_per_year,ratio_quant_over_semi\n";
  for (const auto& evaluation : run.cases) {
    if (!evaluation.quant || !evaluation.semi) {
      throw MisuseError("comparison requires both approaches; re-run with --approach both");
    }
    const double quant = evaluation.quant->erc_per_year;
    const double semi = evaluation.semi->erc_per_year;
    out << evaluation.case_id << "," << format_frequency(quant) << ","
        << format_frequency(semi) << "," << format_frequency(quant / semi) << "\n";
  }
  return out.str();
}

}  // namespace bowtie
