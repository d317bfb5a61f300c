#include "cdqa/cli.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "cdqa/eval.hpp"
#include "cdqa/knowledge_base.hpp"
#include "cdqa/pipeline.hpp"
#include "cdqa/rooms.hpp"
#include "cdqa/service.hpp"

namespace cdqa {
namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

struct Options {
  std::string corpus;
  std::string format = "jsonl";
  std::string out;
  std::string index;
  std::string question;
  std::optional<std::size_t> k;
  std::optional<double> alpha;
  std::string gold;
  std::string rooms;
  std::string config;
  std::string host = "0.0.0.0";
  std::optional<int> port;
  int ngram_max = 2;
};

PipelineConfig pipeline_from(const Options& o) {
  auto cfg = ServiceConfig::load(o.config).pipeline;
  if (o.k) cfg.top_k_docs = *o.k;
  if (o.alpha) cfg.fusion_alpha = *o.alpha;
  cfg.validate();
  return cfg;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  TokenizerConfig tok;
  tok.ngram_max = o.ngram_max;
  auto kb = KnowledgeBase::build(load_corpus(o.corpus, parse_corpus_format(o.format)), tok);
  for (const auto& id : kb.index.empty_documents()) {
    err << "warning: document '" << id << "' has no indexable terms\n";
  }
  save_snapshot(kb, o.out);
  out << "documents=" << kb.corpus.size() << " paragraphs=" << kb.corpus.paragraphs().size()
      << " vocabulary_terms=" << kb.index.vocabulary_size() << "\n";
  return kExitOk;
}

int cmd_ask(const Options& o, std::ostream& out) {
  const auto cfg = pipeline_from(o);
  const auto kb = load_snapshot(o.index);
  out << answer(o.question, kb, cfg).to_json().dump() << "\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto cfg = pipeline_from(o);
  const auto kb = load_snapshot(o.index);
  const auto gold = load_gold(o.gold);
  const auto report = evaluate(kb, gold, cfg, o.k.value_or(kDefaultTopK));
  out << report.to_json().dump() << "\n" << report.to_table();
  return kExitOk;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  auto config = ServiceConfig::load(o.config);
  if (o.k) config.pipeline.top_k_docs = *o.k;
  if (o.alpha) config.pipeline.fusion_alpha = *o.alpha;

  std::optional<RoomInventory> rooms;
  if (!o.rooms.empty() && std::filesystem::exists(o.rooms)) {
    rooms = RoomInventory::load(o.rooms);
  } else {
    err << "warning: no rooms file"
        << (o.rooms.empty() ? std::string{} : " at " + o.rooms)
        << "; /api/rooms will answer 503\n";
  }

  int port = kDefaultPort;
  if (o.port) {
    port = *o.port;
  } else if (const char* env = std::getenv("CDQA_PORT")) {
    port = std::atoi(env);
  }

  QaService service(std::move(config), std::move(rooms));
  service.install(std::make_shared<const KnowledgeBase>(load_snapshot(o.index)));

  HttpServer server(service);
  if (!server.bind(o.host, port)) {
    err << "error: cannot listen on " << o.host << ":" << port << " (port busy or not permitted)\n";
    return kExitData;
  }
  out << "serving on http://" << o.host << ":" << server.port() << std::endl;

  g_interrupted.store(false);
  auto prev_int = std::signal(SIGINT, on_interrupt);
  auto prev_term = std::signal(SIGTERM, on_interrupt);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done.load()) {
      if (g_interrupted.load()) {
        server.stop();
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  server.listen();
  done.store(true);
  watcher.join();
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);
  out << "shut down" << std::endl;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Closed-domain question answering over a hotel knowledge base", "cdqa"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Build an index snapshot from a corpus");
  ingest->add_option("--corpus", o.corpus, "JSONL file or text directory")->required();
  ingest->add_option("--format", o.format, "jsonl | text_dir")->capture_default_str();
  ingest->add_option("--out", o.out, "Snapshot output path")->required();
  ingest->add_option("--ngram-max", o.ngram_max, "1 = unigrams, 2 = uni + bigrams")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();

  auto* ask = app.add_subcommand("ask", "Answer one question from a snapshot");
  ask->add_option("--index", o.index, "Snapshot path")->required();
  ask->add_option("question", o.question, "Question text")->required();
  ask->add_option("--k", o.k, "Documents passed to the reader")->check(CLI::PositiveNumber);
  ask->add_option("--alpha", o.alpha, "Retriever weight in score fusion")->check(CLI::Range(0.0, 1.0));
  ask->add_option("--config", o.config, "Service config file (pipeline defaults)");

  auto* eval = app.add_subcommand("eval", "Score the pipeline against a gold set");
  eval->add_option("--index", o.index, "Snapshot path")->required();
  eval->add_option("--gold", o.gold, "Gold JSONL file")->required();
  eval->add_option("--k", o.k, "Cutoff for recall@k")->check(CLI::PositiveNumber);
  eval->add_option("--alpha", o.alpha, "Retriever weight in score fusion")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--config", o.config, "Service config file (pipeline defaults)");

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--index", o.index, "Snapshot path")->required();
  serve->add_option("--rooms", o.rooms, "Rooms and bookings JSON");
  serve->add_option("--config", o.config, "Service config JSON");
  serve->add_option("--port", o.port, "Port (default $CDQA_PORT or 8080)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve->add_option("--k", o.k, "Documents passed to the reader")->check(CLI::PositiveNumber);
  serve->add_option("--alpha", o.alpha, "Retriever weight in score fusion")->check(CLI::Range(0.0, 1.0));

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(o, out, err);
    if (*ask) return cmd_ask(o, out);
    if (*eval) return cmd_eval(o, out);
    if (*serve) return cmd_serve(o, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace cdqa
