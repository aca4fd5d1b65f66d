#include <strata/errors.hh>
#include <strata/report.hh>

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using nlohmann::json;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace strata
{
    auto sha256_hex(const string & data) -> string
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
        static const char * hex = "0123456789abcdef";
        string out;
        for (unsigned int i = 0; i < len; ++i) {
            out += hex[digest[i] >> 4];
            out += hex[digest[i] & 15];
        }
        return out;
    }

    Cache::Cache(string dir) :
        _dir(std::move(dir))
    {
    }

    auto Cache::load(const string & key, vector<string> & notes) const -> optional<json>
    {
        auto path = std::filesystem::path(_dir) / (key + ".json");
        if (! std::filesystem::exists(path))
            return std::nullopt;
        std::ifstream in(path);
        try {
            auto j = json::parse(in);
            if (j.at("key") != key)
                throw std::runtime_error("key mismatch");
            return j.at("section");
        }
        catch (const std::exception &) {
            notes.push_back("warning: ignoring corrupt cache entry " + path.string());
            return std::nullopt;
        }
    }

    auto Cache::store(const string & key, const json & section) const -> void
    {
        std::error_code ec;
        std::filesystem::create_directories(_dir, ec);
        auto path = std::filesystem::path(_dir) / (key + ".json");
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << json{{"key", key}, {"section", section}}.dump();
        }
        std::filesystem::rename(tmp, path, ec);
    }

    auto known_command(const string & name) -> bool
    {
        static const vector<string> names{"basis", "stratify", "resolve", "tilting", "ringel", "fdim", "verify-paper-example"};
        return std::find(names.begin(), names.end(), name) != names.end();
    }

    auto dump_report(const json & report) -> string
    {
        return report.dump(2) + "\n";
    }

    namespace
    {
        auto render(const json & j, const string & indent, std::ostringstream & out) -> void
        {
            auto scalar_list = [](const json & a) {
                return std::all_of(a.begin(), a.end(), [](const json & x) { return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const json & y) { return y.is_primitive(); })); });
            };
            for (auto it = j.begin(); it != j.end(); ++it) {
                const auto & v = it.value();
                auto key = j.is_object() ? it.key() : "-";
                if (v.is_object() && v.contains("status") && v.size() <= 3 && ! v.contains("checks")) {
                    string s = v["status"].get<string>();
                    if (v.contains("value"))
                        s += " " + v["value"].dump();
                    if (v.contains("lower"))
                        s += " [" + v["lower"].dump() + ", " + (v.contains("upper") ? v["upper"].dump() : string("?")) + "]";
                    out << indent << key << ": " << s << "\n";
                }
                else if (v.is_primitive())
                    out << indent << key << ": " << (v.is_string() ? v.get<string>() : v.dump()) << "\n";
                else if (v.is_array() && scalar_list(v))
                    out << indent << key << ": " << v.dump() << "\n";
                else {
                    out << indent << key << ":\n";
                    render(v, indent + "  ", out);
                }
            }
        }

        auto has_inconclusive(const json & j) -> bool
        {
            if (j.is_string())
                return j.get<string>() == "inconclusive";
            if (j.is_structured())
                for (const auto & x : j)
                    if (has_inconclusive(x))
                        return true;
            return false;
        }
    }

    auto render_text(const json & report) -> string
    {
        std::ostringstream out;
        render(report, "", out);
        return out.str();
    }

    template <Field F>
    auto module_from_spec(const std::shared_ptr<const Algebra<F>> & a, const string & spec, size_t cap) -> Module<F>
    {
        if (spec == "A")
            return regular_module(a);
        static const std::regex pattern(R"(^\s*(L|P|I|Delta|DeltaBar|Nabla|NablaBar|T)\((\w+)\)\s*$)");
        std::smatch m;
        if (! std::regex_match(spec, m, pattern))
            throw InputError("unknown module spec '" + spec + "'");
        auto kind = m[1].str();
        auto name = m[2].str();
        const auto & names = a->vertex_names();
        auto at = std::find(names.begin(), names.end(), name);
        if (at == names.end())
            throw InputError("unknown vertex '" + name + "' in module spec");
        auto v = static_cast<size_t>(at - names.begin());
        if (kind == "L")
            return simple(a, v);
        if (kind == "P")
            return projective(a, v);
        if (kind == "I")
            return injective(a, v);
        if (kind == "T")
            return characteristic_tilting(a, cap).summands[v];
        auto sk = kind == "Delta" ? StratKind::Standard : kind == "DeltaBar" ? StratKind::ProperStandard : kind == "Nabla" ? StratKind::Costandard : StratKind::ProperCostandard;
        return strat_module(a, sk, v);
    }

    namespace
    {
        auto dims_json(const vector<size_t> & v) -> json
        {
            return json(v);
        }

        template <Field F>
        auto module_summary(const Module<F> & m) -> json
        {
            return {{"label", m.label()}, {"dim", m.dim()}, {"dim_vector", dims_json(m.dim_vector())}, {"radical_layers", radical_layers(m)}};
        }

        template <Field F>
        auto tilting_check_json(const TiltingCheck<F> & c) -> json
        {
            return {{"answer", answer_name(c.answer)}, {"projective_dimension", c.pd.to_json()}, {"coresolution_dims", c.coresolution}, {"reason", c.reason}};
        }

        template <Field F>
        struct Session
        {
            std::shared_ptr<const Algebra<F>> a;
            const QuiverPresentation & q;
            size_t cap;
            std::uint64_t seed;
            optional<Analysis<F>> an;

            auto analysis() -> Analysis<F> &
            {
                if (! an)
                    an = analyse(a, &q, cap, seed);
                return *an;
            }

            auto basis() -> json
            {
                auto j = to_json(*a);
                j["dim"] = a->dim();
                return j;
            }

            auto stratify_section() -> json
            {
                auto v = stratify(a, FiltrationOptions{seed});
                json chains = json::array();
                for (const auto & c : v.proper_chains)
                    chains.push_back(to_json(c));
                return {{"sss", to_json(v.sss)},
                        {"properly_stratified", answer_name(v.properly_stratified)},
                        {"quasi_hereditary", answer_name(v.quasi_hereditary)},
                        {"proper_standard_chains", chains},
                        {"delta_dims", v.delta_dims},
                        {"proper_delta_dims", v.proper_delta_dims},
                        {"sss_alternative_check", answer_name(sss_alternative_check(a))},
                        {"global_dimension", global_dimension(a, cap).to_json()}};
            }

            auto resolve(const string & spec) -> json
            {
                auto m = module_from_spec(a, spec, cap);
                return {{"module", spec},
                        {"dim", m.dim()},
                        {"dim_vector", m.dim_vector()},
                        {"resolution", resolution_to_json(minimal_resolution(m, cap, true, seed))},
                        {"injective_dimension", injective_dimension(m, cap).to_json()}};
            }

            auto duality_json(Analysis<F> & x) -> json
            {
                if (! q.duality)
                    return {{"supplied", false}};
                if (! x.duality)
                    return {{"supplied", true}, {"verified", false}, {"error", x.duality_error}};
                return {{"supplied", true}, {"verified", true}, {"simples_fixed", x.duality->simples_fixed}};
            }

            auto tilting() -> json
            {
                auto & x = analysis();
                if (! x.tilting)
                    return {{"applicable", false}, {"reason", "the algebra is not standardly stratified"}};
                json summands = json::array(), co = json::array();
                for (size_t l = 0; l < x.tilting->summands.size(); ++l) {
                    auto s = module_summary(x.tilting->summands[l]);
                    s["extension_steps"] = x.tilting->steps[l];
                    s["resolution"] = resolution_to_json(minimal_resolution(x.tilting->summands[l], cap, true, seed));
                    if (l < x.summands_self_dual.size())
                        s["self_dual"] = static_cast<bool>(x.summands_self_dual[l]);
                    summands.push_back(s);
                }
                for (const auto & c : x.cotilting->summands)
                    co.push_back(module_summary(c));
                json j{{"applicable", true},
                       {"summands", summands},
                       {"pd_t", x.tilting->pd.to_json()},
                       {"cotilting_summands", co},
                       {"id_c", x.cotilting->pd.to_json()},
                       {"t_isomorphic_to_c", is_isomorphic(x.tilting->total, x.cotilting->total, seed).has_value()},
                       {"generalized_tilting", tilting_check_json(is_generalized_tilting(x.tilting->total, cap))},
                       {"duality", duality_json(x)}};
                if (x.t_self_dual)
                    j["t_self_dual"] = *x.t_self_dual;
                return j;
            }

            auto ringel() -> json
            {
                auto & x = analysis();
                if (! x.ringel)
                    return {{"applicable", false}, {"reason", "the algebra is not standardly stratified"}};
                const auto & rd = *x.ringel;
                const auto & rs = *x.ringel_strat;
                json order = json::array();
                for (auto v : rd.ringel->order())
                    order.push_back(rd.ringel->vertex_name(v));
                json n_chains = json::array();
                for (const auto & c : rs.n_chains)
                    n_chains.push_back(to_json(c));
                auto iso = ringel_isomorphic_to_algebra(rd);
                json j{{"dim", rd.ringel->dim()},
                       {"order", order},
                       {"sss", rd.ringel_sss},
                       {"properly_stratified", answer_name(rs.answer)},
                       {"properly_stratified_direct", answer_name(rs.direct)},
                       {"n_filtrations", {{"answer", answer_name(rs.via_n)}, {"n_dims", rs.n_dims}, {"chains", n_chains}}},
                       {"quasi_hereditary", answer_name(is_quasi_hereditary(rd.ringel))},
                       {"isomorphic_to_algebra", iso ? json(*iso ? "true" : "false") : json("not decided")}};
                if (x.two_step) {
                    const auto & h = *x.two_step;
                    json hs = json::array(), trs = json::array();
                    for (const auto & s : h.summands)
                        hs.push_back(module_summary(s));
                    for (const auto & s : h.ringel_tilting.summands)
                        trs.push_back({{"dim", s.dim()}, {"dim_vector", s.dim_vector()}});
                    j["two_step"] = {{"summands", hs},
                                     {"ringel_tilting_summands", trs},
                                     {"pd_ringel_tilting", h.ringel_tilting.pd.to_json()},
                                     {"pd_h", h.pd.to_json()},
                                     {"functor_check", h.functor_check},
                                     {"nablabar_filtered", answer_name(h.nablabar_filtered)},
                                     {"generalized_tilting", tilting_check_json(h.tilting_check)},
                                     {"isomorphic_to_algebra", is_isomorphic(h.total, regular_module(a), seed).has_value()}};
                }
                else
                    j["two_step"] = {{"applicable", false}, {"reason", x.two_step_note}};
                return j;
            }

            auto fdim() -> json
            {
                auto & x = analysis();
                json j{{"global_dimension", x.gldim.to_json()}, {"duality", duality_json(x)}};
                if (! x.fdim) {
                    j["applicable"] = false;
                    j["reason"] = "the algebra is not standardly stratified";
                    return j;
                }
                j["applicable"] = true;
                j["report"] = to_json(*x.fdim);
                if (x.ifdim)
                    j["ifdim"] = to_json(*x.ifdim);
                if (x.injectives_tilting)
                    j["injectives_generalized_tilting"] = tilting_check_json(*x.injectives_tilting);
                return j;
            }
        };

        template <Field F>
        auto resolution_terms(const Resolution<F> & r) -> vector<vector<size_t>>
        {
            vector<vector<size_t>> out;
            for (size_t i = 0; i < r.covers.size(); ++i)
                if (r.covers[i].source.dim() > 0)
                    out.push_back(r.term(i));
            return out;
        }

        template <Field F>
        auto counterexample_checks(const std::shared_ptr<const Algebra<F>> & a, const QuiverPresentation & q, size_t cap, std::uint64_t seed) -> vector<ExampleAssertion>
        {
            vector<ExampleAssertion> out;
            auto add = [&](string name, bool pass, string detail) { out.push_back({std::move(name), pass, std::move(detail)}); };
            if (a->vertex_count() != 2) {
                add("two vertices", false, "contradicts the quiver display: expected two vertices");
                return out;
            }
            auto an = analyse(a, &q, cap, seed);
            auto d = [](size_t x) { return std::to_string(x); };

            vector<size_t> dims{projective(a, 0).dim(), projective(a, 1).dim()};
            for (auto kind : {StratKind::Standard, StratKind::ProperStandard})
                for (auto & m : strat_family(a, kind))
                    dims.push_back(m.dim());
            vector<size_t> expected{6, 4, 2, 4, 1, 2};
            bool tilt_ok = false;
            string tdetail = "no tilting module";
            if (an.tilting) {
                const auto & ts = an.tilting->summands;
                using Layers = vector<vector<size_t>>;
                tilt_ok = ts[0].dim() == 2 && ts[1].dim() == 8 && radical_layers(ts[0]) == Layers{{1, 0}, {1, 0}} && radical_layers(ts[1]) == Layers{{2, 0}, {2, 1}, {1, 1}, {1, 0}};
                tdetail = "T(1) " + d(ts[0].dim()) + ", T(2) " + d(ts[1].dim());
            }
            add("module dimensions", dims == expected && tilt_ok,
                dims == expected && tilt_ok ? "P 6,4; Delta 2,4; DeltaBar 1,2; " + tdetail
                                            : "contradicts the radical filtration displays: P/Delta/DeltaBar dims " + json(dims).dump() + ", " + tdetail);
            add("properly stratified", an.strat.properly_stratified == Answer::Yes,
                an.strat.properly_stratified == Answer::Yes ? "true" : "contradicts 'A is properly stratified': " + answer_name(an.strat.properly_stratified));
            add("not quasi-hereditary", an.strat.quasi_hereditary == Answer::No,
                an.strat.quasi_hereditary == Answer::No ? "Delta(2) differs from DeltaBar(2)" : "contradicts the Delta/DeltaBar displays: " + answer_name(an.strat.quasi_hereditary));
            add("duality", an.duality.has_value() && an.duality->simples_fixed,
                an.duality ? "alpha <-> beta extends to an anti-involution" : "contradicts the anti-involution claim: " + (an.duality_error.empty() ? string("no duality supplied") : an.duality_error));

            auto resolution_check = [&](size_t l, const vector<vector<size_t>> & want, const string & display) {
                if (! an.tilting) {
                    add(display, false, "no tilting module");
                    return;
                }
                auto r = minimal_resolution(an.tilting->summands[l], cap, true, seed);
                auto got = resolution_terms(r);
                add(display, got == want, got == want ? "terms " + json(got).dump() : "contradicts the minimal resolution display: terms " + json(got).dump());
            };
            resolution_check(0, {{1, 0}, {0, 1}}, "resolution 0 -> P(2) -> P(1) -> T(1) -> 0");
            resolution_check(1, {{2, 0}, {0, 1}}, "resolution 0 -> P(2) -> P(1)+P(1) -> T(2) -> 0");

            auto pd_ok = an.tilting && an.tilting->pd == DimensionValue::exact(1);
            add("pd(T) = 1", pd_ok, an.tilting ? "pd(T) = " + an.tilting->pd.to_string() : "no tilting module");
            if (an.fdim) {
                const auto & r = *an.fdim;
                auto fd_ok = r.fdim_delta.exact && r.fdim_delta.value == 0 && r.fdim_delta.route == "injection_certificate";
                add("fdim_Delta = 0", fd_ok, fd_ok ? "injection certificate over " + d(r.fdim_delta.pairs_checked) + " pairs" : "contradicts the zero certificate: route " + r.fdim_delta.route);
                auto f_ok = r.fdim_exact && r.lower == 1;
                add("fdim = 1", f_ok, f_ok ? "witness and upper bound agree" : "contradicts fdim(A) = 1: bounds [" + d(r.lower) + ", " + (r.upper ? d(*r.upper) : string("?")) + "]");
                add("strict chain", r.chain == "0 < 1 < 2", "chain " + r.chain);
            }
            else
                for (const auto * n : {"fdim_Delta = 0", "fdim = 1", "strict chain"})
                    add(n, false, "no finitistic dimension report: the algebra is not standardly stratified");
            auto rps = an.ringel_strat ? an.ringel_strat->answer : Answer::Inconclusive;
            add("Ringel dual not properly stratified", rps == Answer::No, "answer " + answer_name(rps));
            return out;
        }

        template <Field F>
        auto run_with(const AnalysisRequest & req, const QuiverPresentation & q, const F & field, const string & text, RunResult & result) -> void
        {
            auto a = build_algebra(q, field);
            Session<F> s{a, q, req.cap, req.seed, std::nullopt};
            optional<Cache> cache;
            if (req.cache_dir)
                cache.emplace(*req.cache_dir);
            size_t spec_index = 0;
            for (const auto & cmd : req.commands) {
                string spec;
                if (cmd == "resolve") {
                    if (spec_index >= req.module_specs.size())
                        throw InputError("resolve needs a module spec");
                    spec = req.module_specs[spec_index++];
                }
                auto key = sha256_hex(string(version) + "\n" + report_schema + "\n" + std::to_string(req.seed) + "\n" + std::to_string(req.cap) + "\n" + cmd + "\n" + spec + "\n" + text);
                optional<json> section;
                if (cache)
                    section = cache->load(key, result.notes);
                if (section)
                    result.notes.push_back("cache: hit " + cmd + (spec.empty() ? "" : " " + spec));
                else {
                    if (cmd == "basis")
                        section = s.basis();
                    else if (cmd == "stratify")
                        section = s.stratify_section();
                    else if (cmd == "resolve")
                        section = s.resolve(spec);
                    else if (cmd == "tilting")
                        section = s.tilting();
                    else if (cmd == "ringel")
                        section = s.ringel();
                    else if (cmd == "fdim")
                        section = s.fdim();
                    else if (cmd == "verify-paper-example") {
                        json list = json::array();
                        bool all = true;
                        for (const auto & c : counterexample_checks(a, q, req.cap, req.seed)) {
                            list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                            all = all && c.pass;
                        }
                        section = json{{"assertions", list}, {"passed", all}};
                    }
                    else
                        throw InputError("unknown command '" + cmd + "'");
                    if (cache)
                        cache->store(key, *section);
                }
                if (cmd == "resolve")
                    result.report["resolve"][spec] = *section;
                else
                    result.report[cmd] = *section;
                if (cmd == "verify-paper-example" && ! (*section)["passed"].get<bool>())
                    result.exit_code = 1;
            }
        }
    }

    auto run(const AnalysisRequest & req) -> RunResult
    {
        RunResult result;
        result.report = json{{"schema", report_schema}, {"version", version}, {"seed", req.seed}, {"cap", req.cap}};
        try {
            std::ifstream in(req.input);
            if (! in)
                throw InputError("cannot read '" + req.input + "'");
            std::stringstream buffer;
            buffer << in.rdbuf();
            auto text = buffer.str();
            result.report["input_sha256"] = sha256_hex(text);
            QuiverPresentation q;
            try {
                q = parse_quiver(text);
            }
            catch (const ParseError & e) {
                string what = e.what();
                throw InputError(req.input + ":" + std::to_string(e.line()) + ": " + what.substr(what.find(": ") + 2));
            }
            check_field_spec(q.field);
            result.report["field"] = q.field.kind == FieldSpec::Kind::Rational ? "rational" : "GF(" + std::to_string(q.field.prime) + ")";
            if (q.field.kind == FieldSpec::Kind::Rational)
                run_with(req, q, RationalField{}, text, result);
            else
                run_with(req, q, PrimeField(q.field.prime), text, result);
            if (result.exit_code == 0 && has_inconclusive(result.report))
                result.exit_code = 2;
        }
        catch (const std::exception & e) {
            result.report["error"] = {{"message", e.what()}};
            result.exit_code = 1;
        }
        return result;
    }

    auto verify_counterexample(const string & path, size_t cap, std::uint64_t seed) -> vector<ExampleAssertion>
    {
        auto q = parse_quiver_file(path);
        check_field_spec(q.field);
        if (q.field.kind == FieldSpec::Kind::Rational)
            return counterexample_checks(build_algebra(q, RationalField{}), q, cap, seed);
        return counterexample_checks(build_algebra(q, PrimeField(q.field.prime)), q, cap, seed);
    }

    template auto module_from_spec(const std::shared_ptr<const Algebra<PrimeField>> &, const string &, size_t) -> Module<PrimeField>;
    template auto module_from_spec(const std::shared_ptr<const Algebra<RationalField>> &, const string &, size_t) -> Module<RationalField>;
}
