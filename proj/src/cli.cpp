#include "ontohyp/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "ontohyp/error.hpp"
#include "ontohyp/io.hpp"

namespace ontohyp {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct DatasetStats {
  std::size_t count = 0;
  double axioms = 0, observations = 0, hypotheses = 0;
};

std::string group_key(GroupBy by, int height, Mode mode, const std::string& subtasks) {
  switch (by) {
    case GroupBy::kHeight:
      return std::to_string(height);
    case GroupBy::kSubtask:
      return subtasks;
    case GroupBy::kMode:
      return std::string(to_string(mode));
    case GroupBy::kAll:
      break;
  }
  return "all";
}

std::map<std::string, DatasetStats> dataset_stats(const std::vector<DatasetRecord>& records,
                                                  GroupBy by) {
  std::map<std::string, DatasetStats> groups;
  for (const auto& r : records) {
    const auto& ex = r.example;
    auto& s = groups[group_key(by, ex.meta.height, ex.meta.mode, join_subtasks(ex.meta.subtasks))];
    ++s.count;
    s.axioms += static_cast<double>(ex.visible().size());
    s.observations += static_cast<double>(ex.observations.size());
    s.hypotheses += static_cast<double>(ex.truth.size());
  }
  for (auto& [key, s] : groups) {
    s.axioms /= s.count;
    s.observations /= s.count;
    s.hypotheses /= s.count;
  }
  return groups;
}

void print_dataset_stats(const std::map<std::string, DatasetStats>& groups, std::ostream& out) {
  out << "group              n    axioms  observations  hypotheses\n";
  for (const auto& [key, s] : groups) {
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %5zu  %8.1f  %12.1f  %10.1f\n", key.c_str(),
                  s.count, s.axioms, s.observations, s.hypotheses);
    out << line;
  }
}

std::vector<GradedItem> graded_items(const std::vector<ResultRecord>& records) {
  std::vector<GradedItem> items;
  for (const auto& r : records)
    if (r.graded) items.push_back(graded_item(r));
  return items;
}

json report_json(const Report& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"group", r.group},
                    {"count", r.count},
                    {"weak", r.weak},
                    {"weak_ci", {r.weak_ci.lower, r.weak_ci.upper}},
                    {"strong", r.strong},
                    {"strong_ci", {r.strong_ci.lower, r.strong_ci.upper}},
                    {"quality", r.quality}});
  return {{"confidence", report.confidence}, {"rows", rows}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  f.flush();
  if (!f) throw std::ios_base::failure("write failed: " + path.string());
}

// Maps library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& fn) {
  try {
    return fn();
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const PoolExhausted& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidWorldModel& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.count < 0) {
      err << "--count must be non-negative\n";
      return int{kExitUsage};
    }
    std::vector<DatasetRecord> records;
    for (int i = 0; i < options.count; ++i) {
      GenConfig config;
      config.height = options.height;
      config.mode = options.mode;
      config.subtask = options.subtask;
      config.subtype_style = options.subtype_style;
      config.seed = derive_seed(options.seed, static_cast<std::uint64_t>(i));
      char id[32];
      std::snprintf(id, sizeof id, "ex-%06d", i);
      records.push_back(make_record(id, generate_example(config)));
    }
    write_dataset(options.out, records);
    out << "wrote " << records.size() << " examples to " << options.out.string() << '\n';
    if (!records.empty()) print_dataset_stats(dataset_stats(records, GroupBy::kHeight), out);
    return int{kExitOk};
  });
}

int cmd_grade(const GradeOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto dataset = read_dataset(options.dataset);
    std::map<std::string, std::string> responses;
    for_each_jsonl(options.responses, [&](const json& j) {
      try {
        responses[j.at("id").get<std::string>()] = j.at("response").get<std::string>();
      } catch (const json::exception& e) {
        throw FormatError(std::string("responses: ") + e.what());
      }
    });

    std::vector<ResultRecord> results;
    std::size_t missing = 0;
    for (const auto& record : dataset) {
      auto it = responses.find(record.id);
      if (it == responses.end()) {
        ++missing;
        ResultRecord r;
        r.id = record.id;
        r.height = record.example.meta.height;
        r.mode = record.example.meta.mode;
        r.subtasks = record.example.meta.subtasks;
        r.error = "no response";
        results.push_back(std::move(r));
        continue;
      }
      try {
        results.push_back(grade_response(record, it->second));
      } catch (const DivisionUndefined& e) {
        ResultRecord r;
        r.id = record.id;
        r.response = it->second;
        r.error = e.what();
        results.push_back(std::move(r));
      }
    }

    std::ofstream f(options.out);
    if (!f) throw std::ios_base::failure("cannot write " + options.out.string());
    for (const auto& r : results) f << to_json(r).dump() << '\n';
    f.flush();
    if (!f) throw std::ios_base::failure("write failed: " + options.out.string());

    const auto items = graded_items(results);
    if (!items.empty())
      out << format_report(aggregate(items, GroupBy::kHeight, options.conditional_quality));
    if (missing > 0) err << "warning: " << missing << " examples had no response\n";
    return int{kExitOk};
  });
}

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    json config;
    {
      std::ifstream f(options.endpoint_config);
      if (!f) throw std::ios_base::failure("cannot open " + options.endpoint_config.string());
      try {
        config = json::parse(f);
      } catch (const json::exception& e) {
        err << "endpoint config: " << e.what() << '\n';
        return kExitUsage;
      }
    }
    const auto dataset = read_dataset(options.dataset);

    RunConfig run;
    run.icl = options.icl;
    run.concurrency = options.concurrency;
    run.demos_per_question = options.demos_per_question;
    run.demo_seed = options.demo_seed;
    if (config.contains("system_prompt")) run.system_prompt = config["system_prompt"].get<std::string>();

    std::unique_ptr<ModelClient> client;
    std::filesystem::create_directories(options.out);
    if (config.value("kind", "http") == "scripted") {
      try {
        client = std::make_unique<ScriptedClient>(
            dataset, script_from_string(config.value("script", "truth")));
      } catch (const FormatError& e) {
        err << "endpoint config: " << e.what() << '\n';
        return kExitUsage;
      }
    } else {
      ModelEndpoint endpoint;
      try {
        endpoint = ModelEndpoint::from_json(config);
      } catch (const FormatError& e) {
        err << e.what() << '\n';
        return kExitUsage;
      }
      if (!endpoint.auth_env.empty()) {
        const char* token = std::getenv(endpoint.auth_env.c_str());
        if (token == nullptr || *token == '\0') {
          err << "environment variable " << endpoint.auth_env << " is not set\n";
          return kExitUsage;
        }
      }
      client = std::make_unique<HttpChatClient>(endpoint, options.out / "requests.jsonl");
    }

    const auto summary = run_eval(dataset, *client, run, options.out);
    out << "completed " << summary.completed << ", skipped " << summary.skipped
        << ", errors " << summary.errors << '\n';
    const auto items = graded_items(summary.records);
    if (!items.empty()) {
      const auto report = aggregate(items, GroupBy::kHeight, options.conditional_quality);
      const auto text = format_report(report);
      out << text;
      write_text(options.out / "summary.txt", text);
      auto j = report_json(report);
      j["icl"] = std::string(to_string(options.icl));
      j["model"] = client->name();
      j["system_prompt_version"] = std::string(kSystemPromptVersion);
      write_text(options.out / "summary.json", j.dump(2) + "\n");
    }
    return kExitOk;
  });
}

int cmd_stats(const StatsOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    std::string csv;
    if (options.dataset) {
      const auto records = read_dataset(*options.dataset);
      if (records.empty()) {
        err << "no records in " << options.dataset->string() << '\n';
        return kExitIo;
      }
      const auto groups = dataset_stats(records, options.group_by);
      print_dataset_stats(groups, out);
      csv = "group,count,axioms,observations,hypotheses\n";
      for (const auto& [key, s] : groups)
        csv += key + "," + std::to_string(s.count) + "," + fixed(s.axioms, 4) + "," +
               fixed(s.observations, 4) + "," + fixed(s.hypotheses, 4) + "\n";
    } else if (options.results) {
      const auto items = graded_items(read_results(*options.results));
      if (items.empty()) {
        err << "no graded records in " << options.results->string() << '\n';
        return kExitIo;
      }
      const auto report = aggregate(items, options.group_by, options.conditional_quality);
      out << format_report(report);
      csv = "group,count,weak,weak_lower,weak_upper,strong,strong_lower,strong_upper,quality\n";
      for (const auto& r : report.rows)
        csv += r.group + "," + std::to_string(r.count) + "," + fixed(r.weak, 6) + "," +
               fixed(r.weak_ci.lower, 6) + "," + fixed(r.weak_ci.upper, 6) + "," +
               fixed(r.strong, 6) + "," + fixed(r.strong_ci.lower, 6) + "," +
               fixed(r.strong_ci.upper, 6) + "," + fixed(r.quality, 6) + "\n";
    } else {
      err << "stats needs --dataset or --results\n";
      return kExitUsage;
    }
    if (options.plot_data) write_text(*options.plot_data, csv);
    return kExitOk;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate and grade hypothesis-discovery reasoning examples", "ontohyp"};
  app.require_subcommand(1);

  const std::vector<std::string> modes{"single", "multi"};
  const std::vector<std::string> subtasks{"infer-property", "infer-membership", "infer-subtype",
                                          "random"};
  const std::vector<std::string> styles{"hide-edge", "fresh-supertype", "mixed"};
  const std::vector<std::string> groupings{"height", "subtask", "mode", "all"};

  GenerateOptions gen;
  std::string gen_mode = "multi", gen_subtask = "random", gen_style = "mixed", gen_out;
  auto* generate = app.add_subcommand("generate", "Write a dataset of reasoning examples");
  generate->add_option("--height", gen.height, "Ontology tree height")->check(CLI::Range(1, 8));
  generate->add_option("--mode", gen_mode, "single or multi")->check(CLI::IsMember(modes));
  generate->add_option("--count", gen.count, "Number of examples")->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "Run seed");
  generate->add_option("--subtask", gen_subtask, "Single-mode subtask")->check(CLI::IsMember(subtasks));
  generate->add_option("--subtype-style", gen_style, "How subtype hypotheses are made")
      ->check(CLI::IsMember(styles));
  generate->add_option("--out", gen_out, "Dataset file (JSON Lines)")->required();

  GradeOptions grd;
  std::string grd_dataset, grd_responses, grd_out;
  auto* grade_cmd = app.add_subcommand("grade", "Grade responses against a dataset");
  grade_cmd->add_option("--dataset", grd_dataset)->required();
  grade_cmd->add_option("--responses", grd_responses, "JSON Lines of {id, response}")->required();
  grade_cmd->add_option("--out", grd_out, "Results file (JSON Lines)")->required();
  grade_cmd->add_flag("--conditional-quality", grd.conditional_quality,
                      "Average quality over weak-correct results only");

  EvalOptions ev;
  std::string ev_dataset, ev_config, ev_out, ev_icl = "none";
  auto* eval = app.add_subcommand("eval", "Query a model on a dataset and grade the answers");
  eval->add_option("--dataset", ev_dataset)->required();
  eval->add_option("--endpoint-config", ev_config, "Endpoint JSON")->required();
  eval->add_option("--icl", ev_icl, "none, in-dist or ood")
      ->check(CLI::IsMember({"none", "in-dist", "ood"}));
  eval->add_option("--out", ev_out, "Run directory")->required();
  eval->add_option("--concurrency", ev.concurrency, "Requests in flight")->check(CLI::Range(1, 256));
  eval->add_flag("--demos-per-question", ev.demos_per_question, "Fresh demos for every question");
  eval->add_option("--demo-seed", ev.demo_seed, "Seed for demonstrations");
  eval->add_flag("--conditional-quality", ev.conditional_quality);

  StatsOptions st;
  std::string st_dataset, st_results, st_plot, st_group = "height";
  auto* stats = app.add_subcommand("stats", "Summarize a dataset or a results file");
  auto* st_d = stats->add_option("--dataset", st_dataset);
  auto* st_r = stats->add_option("--results", st_results);
  st_d->excludes(st_r);
  stats->add_option("--group-by", st_group)->check(CLI::IsMember(groupings));
  stats->add_option("--plot-data", st_plot, "CSV file for external plotting");
  stats->add_flag("--conditional-quality", st.conditional_quality);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*generate) {
    gen.mode = mode_from_string(gen_mode);
    gen.subtask = subtask_from_string(gen_subtask);
    gen.subtype_style = subtype_style_from_string(gen_style);
    gen.out = gen_out;
    return cmd_generate(gen, out, err);
  }
  if (*grade_cmd) {
    grd.dataset = grd_dataset;
    grd.responses = grd_responses;
    grd.out = grd_out;
    return cmd_grade(grd, out, err);
  }
  if (*eval) {
    ev.dataset = ev_dataset;
    ev.endpoint_config = ev_config;
    ev.out = ev_out;
    ev.icl = icl_mode_from_string(ev_icl);
    return cmd_eval(ev, out, err);
  }
  if (!st_dataset.empty()) st.dataset = st_dataset;
  if (!st_results.empty()) st.results = st_results;
  if (!st_plot.empty()) st.plot_data = st_plot;
  st.group_by = st_group == "height"    ? GroupBy::kHeight
                : st_group == "subtask" ? GroupBy::kSubtask
                : st_group == "mode"    ? GroupBy::kMode
                                        : GroupBy::kAll;
  return cmd_stats(st, out, err);
}

}  // namespace ontohyp
