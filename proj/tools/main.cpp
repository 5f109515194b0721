#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <pthread.h>
#include <sstream>
#include <thread>

#include "counterquill/error.hpp"
#include "counterquill/report.hpp"
#include "counterquill/server/api.hpp"
#include "counterquill/server/config.hpp"

namespace cq = counterquill;

namespace {

int serve(const std::string& config_path, bool mock) {
    auto config = config_path.empty() ? cq::server::ServerConfig{} : cq::server::load_config(config_path);
    if (mock) config.provider = cq::server::ProviderMode::mock;

    // Block the shutdown signals before any thread starts so that only the
    // sigwait below sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto rt = cq::server::build_runtime(config);
    cq::server::HttpServer server(*rt.service, rt.auth_token);
    const int port = server.bind(config.bind, config.port);
    if (port < 0) {
        std::cerr << "error: cannot bind " << config.bind << ":" << config.port << "\n";
        return 1;
    }
    std::cerr << "counterquill listening on " << config.bind << ":" << port << " (provider "
              << cq::server::to_string(config.provider) << ", " << rt.service->sessions().size()
              << " sessions replayed)\n";

    std::thread worker([&] { server.listen_after_bind(); });
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "shutting down\n";
    server.stop();
    worker.join();
    rt.service->flush();
    return 0;
}

cq::Corpus corpus_from(const std::string& path) {
    return path.empty() ? cq::Corpus::bundled() : cq::Corpus::load(path);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) cq::fail(cq::ErrorCode::invalid_argument, "cannot write " + path);
}

int study_export(const std::string& data_dir, const std::string& corpus_path,
                 const std::string& output) {
    const auto log_path = std::filesystem::path(data_dir) / "events.jsonl";
    if (!std::filesystem::exists(log_path)) {
        cq::fail(cq::ErrorCode::not_found, "no event log at " + log_path.string());
    }
    // Replay only; the provider is never called.
    auto gateway = std::make_shared<cq::llm::Gateway>(std::make_shared<cq::llm::MockProvider>());
    cq::Service service(corpus_from(corpus_path), gateway, std::make_unique<cq::EventLog>(log_path));
    write_output(output, cq::study::write_dataset(service.export_dataset()));
    return 0;
}

int study_assign(const std::string& corpus_path, std::size_t participants, std::uint64_t seed) {
    const auto corpus = corpus_from(corpus_path);
    std::cout << "participant_id,participant_index,first_condition,second_condition,instances\n";
    for (std::size_t i = 0; i < participants; ++i) {
        std::ostringstream id;
        id << 'P' << (i + 1 < 10 ? "0" : "") << i + 1;
        const auto order = cq::study::assign_condition_order(i);
        const auto items = cq::study::assign_corpus(id.str(), corpus, seed);
        std::cout << id.str() << ',' << i << ',' << cq::to_string(order.first) << ','
                  << cq::to_string(order.second) << ',';
        for (std::size_t k = 0; k < items.size(); ++k) std::cout << (k ? ";" : "") << items[k];
        std::cout << '\n';
    }
    return 0;
}

int stats_report(const std::string& input, const std::string& family, const std::string& format) {
    std::ifstream in(input, std::ios::binary);
    if (!in) cq::fail(cq::ErrorCode::not_found, "cannot read " + input);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto rows = cq::study::read_dataset(buf.str());
    const auto sections = cq::report::build(rows, cq::stats::parse_family(family));
    std::cout << cq::report::render(sections, cq::stats::parse_table_format(format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CounterQuill session service and study tooling"};
    app.require_subcommand(1);

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    std::string config_path;
    bool mock = false;
    serve_cmd->add_option("--config", config_path, "Server config (JSON)")->check(CLI::ExistingFile);
    serve_cmd->add_flag("--mock", mock, "Use the deterministic mock provider");

    auto* study_cmd = app.add_subcommand("study", "Study protocol tools");
    study_cmd->require_subcommand(1);
    auto* export_cmd = study_cmd->add_subcommand("export", "Write the dataset CSV from an event log");
    std::string data_dir, output, corpus_path;
    export_cmd->add_option("--data-dir", data_dir, "Directory holding events.jsonl")->required();
    export_cmd->add_option("--output", output, "CSV path (default stdout)");
    export_cmd->add_option("--corpus", corpus_path, "Corpus JSONL (default bundled)");

    auto* assign_cmd = study_cmd->add_subcommand("assign", "Print condition order and instances");
    std::size_t participants = 20;
    std::uint64_t seed = 0;
    assign_cmd->add_option("--corpus", corpus_path, "Corpus JSONL (default bundled)");
    assign_cmd->add_option("--participants", participants, "Participant count")->check(CLI::PositiveNumber);
    assign_cmd->add_option("--seed", seed, "Assignment seed");

    auto* stats_cmd = app.add_subcommand("stats", "Statistics");
    stats_cmd->require_subcommand(1);
    auto* report_cmd = stats_cmd->add_subcommand("report", "t-test tables from a dataset CSV");
    std::string input, family = "paired", format = "text";
    report_cmd->add_option("--input", input, "Dataset CSV")->required();
    report_cmd->add_option("--family", family, "paired or welch")
        ->check(CLI::IsMember({"paired", "welch"}));
    report_cmd->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve_cmd) return serve(config_path, mock);
        if (*export_cmd) return study_export(data_dir, corpus_path, output);
        if (*assign_cmd) return study_assign(corpus_path, participants, seed);
        if (*report_cmd) return stats_report(input, family, format);
    } catch (const cq::Error& e) {
        std::cerr << "error [" << cq::to_string(e.code()) << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
