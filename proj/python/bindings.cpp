#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <tuple>

#include "counterquill/cowrite.hpp"
#include "counterquill/learning.hpp"
#include "counterquill/llm/lexical.hpp"
#include "counterquill/llm/yes_no.hpp"
#include "counterquill/server/api.hpp"
#include "counterquill/server/config.hpp"
#include "counterquill/stats.hpp"
#include "counterquill/study.hpp"

namespace py = pybind11;
using namespace counterquill;

namespace {

py::dict report_dict(const stats::TestReport& r) {
    py::dict d;
    d["family"] = std::string(stats::to_string(r.family));
    d["n_a"] = r.n_a;
    d["n_b"] = r.n_b;
    d["mean_a"] = r.a.mean;
    d["sd_a"] = r.a.sd;
    d["mean_b"] = r.b.mean;
    d["sd_b"] = r.b.sd;
    d["mean_difference"] = r.mean_difference;
    d["t"] = r.t;
    d["df"] = r.df;
    d["p"] = r.p;
    d["ci_low"] = r.ci_low;
    d["ci_high"] = r.ci_high;
    return d;
}

// A mock-provider service over a data directory, driven through the HTTP
// routing layer without a socket.
class PyService {
public:
    PyService(const std::string& data_dir, std::uint64_t mock_seed, int attempt_cap,
              const std::string& corpus_path, std::uint64_t assignment_seed) {
        server::ServerConfig c;
        c.provider = server::ProviderMode::mock;
        c.data_dir = data_dir;
        c.corpus_path = corpus_path;
        c.mock_seed = mock_seed;
        c.attempt_cap = attempt_cap;
        c.assignment_seed = assignment_seed;
        c.auth_token_env.clear();
        runtime_ = server::build_runtime(c, [](const std::string&) { return std::nullopt; });
        api_ = std::make_unique<server::Api>(*runtime_.service);
    }

    std::tuple<int, std::string, std::string> request(const std::string& method, const std::string& path,
                                                      const std::string& body,
                                                      const std::map<std::string, std::string>& query) {
        server::ApiRequest req{method, path, {query.begin(), query.end()}, body, ""};
        py::gil_scoped_release release;
        auto r = api_->handle(req);
        return {r.status, r.body, r.content_type};
    }

    void flush() { runtime_.service->flush(); }

private:
    server::Runtime runtime_;
    std::unique_ptr<server::Api> api_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the counterquill session service";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object args = py::make_tuple(std::string(to_string(e.code())), e.what());
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    m.def("paired_t", [](const std::vector<double>& a, const std::vector<double>& b) {
        return report_dict(stats::paired_t(a, b));
    });
    m.def("welch_t", [](const std::vector<double>& a, const std::vector<double>& b) {
        return report_dict(stats::welch_t(a, b));
    });
    m.def("student_t_cdf", &stats::student_t_cdf, py::arg("x"), py::arg("df"));
    m.def("student_t_quantile", &stats::student_t_quantile, py::arg("probability"), py::arg("df"));
    m.def("incomplete_beta", &stats::incomplete_beta, py::arg("x"), py::arg("a"), py::arg("b"));
    m.def("percent_change", &stats::percent_change, py::arg("mean_from"), py::arg("mean_to"));
    m.def("significance_stars", &stats::significance_stars);

    m.def("grade_quiz", [](const std::vector<std::string>& answers) {
        return learning::grade_answers("", learning::parse_answers(answers)).n_correct;
    });
    m.def("quiz_accuracy", [](const std::vector<int>& correct_counts) {
        return learning::accuracy_aggregate(correct_counts);
    });

    m.def("splice", [](const std::string& content, std::size_t start, std::size_t end,
                       const std::string& replacement) {
        return cowrite::splice(content, start, end, replacement);
    });
    m.def("seed_draft", [](const std::string& a1, const std::string& a2) { return cowrite::seed_draft(a1, a2); });
    m.def("lexically_equivalent",
          [](const std::string& selection, const std::string& gold) { return llm::lexically_equivalent(selection, gold); });
    m.def("parse_yes_no", [](const std::string& completion) { return llm::parse_yes_no(completion); });

    m.def("condition_order", [](std::size_t index) {
        auto o = study::assign_condition_order(index);
        return std::make_pair(std::string(to_string(o.first)), std::string(to_string(o.second)));
    });
    m.def(
        "assign_corpus",
        [](const std::string& participant_id, const std::string& corpus_path, std::uint64_t seed) {
            auto corpus = corpus_path.empty() ? Corpus::bundled() : Corpus::load(corpus_path);
            return study::assign_corpus(participant_id, corpus, seed);
        },
        py::arg("participant_id"), py::arg("corpus_path") = "", py::arg("seed") = 0);

    py::class_<PyService>(m, "_Service")
        .def(py::init<const std::string&, std::uint64_t, int, const std::string&, std::uint64_t>(),
             py::arg("data_dir"), py::arg("mock_seed") = 0, py::arg("attempt_cap") = 3,
             py::arg("corpus_path") = "", py::arg("assignment_seed") = 0)
        .def("request", &PyService::request)
        .def("flush", &PyService::flush);
}
