#include <strata/errors.hh>
#include <strata/quiver.hh>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

using std::optional;
using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace strata
{
    namespace
    {
        auto split_ws(const string & s) -> vector<string>
        {
            vector<string> out;
            std::istringstream in(s);
            string tok;
            while (in >> tok)
                out.push_back(tok);
            return out;
        }

        auto is_number(const string & s) -> bool
        {
            if (s.empty())
                return false;
            return std::all_of(s.begin(), s.end(), [](char c) { return (c >= '0' && c <= '9') || c == '/'; });
        }

        auto parse_count(const string & s, size_t line) -> size_t
        {
            if (s.empty() || ! std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
                throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
            return std::stoul(s);
        }

        auto split_on(const string & s, char sep) -> vector<string>
        {
            vector<string> out;
            string cur;
            for (char c : s) {
                if (c == sep) {
                    out.push_back(cur);
                    cur.clear();
                }
                else
                    cur += c;
            }
            out.push_back(cur);
            return out;
        }
    }

    auto word_endpoints(const QuiverPresentation & q, const vector<size_t> & word) -> optional<pair<size_t, size_t>>
    {
        if (word.empty())
            return std::nullopt;
        for (size_t i = 0; i + 1 < word.size(); ++i)
            if (q.arrows[word[i]].source != q.arrows[word[i + 1]].target)
                return std::nullopt;
        return pair{q.arrows[word.back()].source, q.arrows[word.front()].target};
    }

    auto parse_quiver(const string & text) -> QuiverPresentation
    {
        QuiverPresentation q;
        bool have_vertices = false;
        std::map<string, size_t> arrow_index;
        std::istringstream in(text);
        string raw;
        size_t line = 0;

        auto vertex = [&](const string & s) -> size_t {
            auto v = parse_count(s, line);
            if (! have_vertices)
                throw ParseError(line, "vertices must be declared first");
            if (v < 1 || v > q.vertex_count)
                throw ParseError(line, "vertex " + s + " out of range");
            return v - 1;
        };
        auto arrow = [&](const string & s) -> size_t {
            auto it = arrow_index.find(s);
            if (it == arrow_index.end())
                throw ParseError(line, "unknown arrow '" + s + "'");
            return it->second;
        };

        while (std::getline(in, raw)) {
            ++line;
            auto hash = raw.find('#');
            if (hash != string::npos)
                raw.resize(hash);
            auto toks = split_ws(raw);
            if (toks.empty())
                continue;
            const auto & key = toks[0];

            if (key == "field") {
                if (toks.size() != 2)
                    throw ParseError(line, "field takes one argument");
                if (toks[1] == "rational")
                    q.field = FieldSpec{FieldSpec::Kind::Rational, 0};
                else if (toks[1] == "prime")
                    q.field = FieldSpec{};
                else
                    q.field = FieldSpec{FieldSpec::Kind::Prime, static_cast<std::uint32_t>(parse_count(toks[1], line))};
            }
            else if (key == "vertices") {
                if (toks.size() != 2)
                    throw ParseError(line, "vertices takes one argument");
                if (have_vertices)
                    throw ParseError(line, "vertices declared twice");
                q.vertex_count = parse_count(toks[1], line);
                if (q.vertex_count == 0)
                    throw ParseError(line, "at least one vertex is required");
                have_vertices = true;
            }
            else if (key == "arrow") {
                if (toks.size() != 4)
                    throw ParseError(line, "arrow takes a name, a source and a target");
                if (is_number(toks[1]) || toks[1].find('*') != string::npos)
                    throw ParseError(line, "bad arrow name '" + toks[1] + "'");
                if (arrow_index.count(toks[1]))
                    throw ParseError(line, "arrow '" + toks[1] + "' declared twice");
                arrow_index[toks[1]] = q.arrows.size();
                q.arrows.push_back({toks[1], vertex(toks[2]), vertex(toks[3])});
            }
            else if (key == "relation") {
                string rest = raw.substr(raw.find("relation") + 8);
                string spaced;
                for (char c : rest) {
                    if (c == '+' || c == '-') {
                        spaced += ' ';
                        spaced += c;
                        spaced += ' ';
                    }
                    else
                        spaced += c;
                }
                auto parts = split_ws(spaced);
                if (parts.empty())
                    throw ParseError(line, "empty relation");
                vector<RelationTerm> terms;
                bool negative = false;
                string coeff;
                bool expect_term = true;
                for (const auto & p : parts) {
                    if (p == "+" || p == "-") {
                        if (! expect_term)
                            expect_term = true;
                        else if (! coeff.empty())
                            throw ParseError(line, "misplaced sign");
                        if (p == "-")
                            negative = ! negative;
                        continue;
                    }
                    if (! expect_term)
                        throw ParseError(line, "missing operator before '" + p + "'");
                    auto factors = split_on(p, '*');
                    size_t start = 0;
                    if (is_number(factors[0])) {
                        if (! coeff.empty())
                            throw ParseError(line, "two coefficients in one term");
                        coeff = factors[0];
                        start = 1;
                        if (factors.size() == 1)
                            continue;
                    }
                    RelationTerm t;
                    for (size_t i = start; i < factors.size(); ++i) {
                        if (factors[i].empty())
                            throw ParseError(line, "empty factor in '" + p + "'");
                        t.word.push_back(arrow(factors[i]));
                    }
                    t.coeff = (negative ? "-" : "") + (coeff.empty() ? string("1") : coeff);
                    if (! word_endpoints(q, t.word))
                        throw ParseError(line, "word '" + p + "' does not compose");
                    terms.push_back(std::move(t));
                    negative = false;
                    coeff.clear();
                    expect_term = false;
                }
                if (expect_term)
                    throw ParseError(line, "relation ends with an operator");
                auto ends = *word_endpoints(q, terms[0].word);
                for (const auto & t : terms)
                    if (*word_endpoints(q, t.word) != ends)
                        throw ParseError(line, "relation terms are not parallel");
                q.relations.push_back(std::move(terms));
            }
            else if (key == "order") {
                if (! have_vertices)
                    throw ParseError(line, "vertices must be declared first");
                if (toks.size() != q.vertex_count + 1)
                    throw ParseError(line, "order must list every vertex");
                q.order.clear();
                vector<bool> seen(q.vertex_count, false);
                for (size_t i = 1; i < toks.size(); ++i) {
                    auto v = vertex(toks[i]);
                    if (seen[v])
                        throw ParseError(line, "vertex repeated in order");
                    seen[v] = true;
                    q.order.push_back(v);
                }
            }
            else if (key == "duality") {
                string rest = raw.substr(raw.find("duality") + 7);
                std::replace(rest.begin(), rest.end(), ',', ' ');
                vector<pair<size_t, size_t>> pairs;
                for (const auto & tok : split_ws(rest)) {
                    auto arrow_pos = tok.find("->");
                    if (arrow_pos == string::npos)
                        throw ParseError(line, "expected name->name, got '" + tok + "'");
                    pairs.emplace_back(arrow(tok.substr(0, arrow_pos)), arrow(tok.substr(arrow_pos + 2)));
                }
                q.duality = std::move(pairs);
            }
            else
                throw ParseError(line, "unknown directive '" + key + "'");
        }
        if (! have_vertices)
            throw ParseError(line, "no vertices declared");
        if (q.order.empty())
            for (size_t v = 0; v < q.vertex_count; ++v)
                q.order.push_back(v);
        return q;
    }

    auto parse_quiver_file(const string & path) -> QuiverPresentation
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_quiver(ss.str());
    }

    namespace
    {
        struct PathBasis
        {
            vector<vector<size_t>> words;
            vector<size_t> source, target;
        };

        template <Field F>
        struct ParsedRelation
        {
            vector<pair<typename F::Element, vector<size_t>>> terms;
            size_t source, target, length;
        };

        // Normal forms for length-homogeneous relations. Level m holds a basis
        // of A_m whose elements are words a * b with b a basis word of level m-1;
        // the ideal in level m is spanned by the images of r * b.
        template <Field F>
        class GradedBuilder
        {
        public:
            GradedBuilder(const QuiverPresentation & q, const F & f, const vector<ParsedRelation<F>> & rels, size_t cap) :
                _q(q),
                _f(f),
                _rels(rels)
            {
                Level zero;
                for (size_t v = 0; v < q.vertex_count; ++v) {
                    zero.words.push_back({});
                    zero.source.push_back(v);
                    zero.target.push_back(v);
                }
                _levels.push_back(std::move(zero));
                for (size_t m = 1;; ++m) {
                    if (_levels.back().words.empty()) {
                        _levels.pop_back();
                        break;
                    }
                    if (m > cap)
                        throw NotFiniteDimensional("path length " + std::to_string(m) + " still has nonzero paths beyond the degree cap " + std::to_string(cap));
                    build_level(m);
                }
            }

            [[nodiscard]] auto levels() const -> size_t { return _levels.size(); }
            [[nodiscard]] auto level_words(size_t m) const -> const vector<vector<size_t>> & { return _levels[m].words; }
            [[nodiscard]] auto level_source(size_t m) const -> const vector<size_t> & { return _levels[m].source; }
            [[nodiscard]] auto level_target(size_t m) const -> const vector<size_t> & { return _levels[m].target; }

            /// Coordinates of a nonempty composable word in its level basis.
            auto normal_form(const vector<size_t> & word) -> Vector<F>
            {
                auto m = word.size();
                if (m >= _levels.size())
                    return {};
                auto & lvl = _levels[m];
                if (auto it = lvl.memo.find(word); it != lvl.memo.end())
                    return it->second;
                Vector<F> prev;
                if (m == 1) {
                    prev.assign(_levels[0].words.size(), _f.zero());
                    prev[_q.arrows[word[0]].source] = _f.one();
                }
                else {
                    prev = normal_form(vector<size_t>(word.begin() + 1, word.end()));
                }
                auto out = reduce_candidate(m, word[0], prev);
                lvl.memo.emplace(word, out);
                return out;
            }

        private:
            struct Level
            {
                vector<vector<size_t>> words;
                vector<size_t> source, target;
                // candidate (arrow, previous basis index) -> candidate index
                std::map<pair<size_t, size_t>, size_t> candidates;
                optional<Subspace<F>> ideal;
                vector<size_t> basis_candidates;
                std::map<vector<size_t>, Vector<F>> memo;
            };

            auto candidate_vector(size_t m, size_t a, const Vector<F> & prev) -> Vector<F>
            {
                auto & lvl = _levels[m];
                Vector<F> v(lvl.candidates.size(), _f.zero());
                for (size_t b = 0; b < prev.size(); ++b) {
                    if (_f.is_zero(prev[b]))
                        continue;
                    auto it = lvl.candidates.find({a, b});
                    if (it != lvl.candidates.end())
                        v[it->second] = _f.add(v[it->second], prev[b]);
                }
                return v;
            }

            auto reduce_candidate(size_t m, size_t a, const Vector<F> & prev) -> Vector<F>
            {
                auto & lvl = _levels[m];
                auto r = lvl.ideal->reduce(candidate_vector(m, a, prev));
                Vector<F> out;
                out.reserve(lvl.basis_candidates.size());
                for (auto c : lvl.basis_candidates)
                    out.push_back(r[c]);
                return out;
            }

            auto build_level(size_t m) -> void
            {
                Level lvl;
                const auto & prev = _levels[m - 1];
                vector<pair<size_t, size_t>> cand_list;
                for (size_t a = 0; a < _q.arrows.size(); ++a)
                    for (size_t b = 0; b < prev.words.size(); ++b)
                        if (prev.target[b] == _q.arrows[a].source) {
                            lvl.candidates[{a, b}] = cand_list.size();
                            cand_list.emplace_back(a, b);
                        }
                lvl.ideal.emplace(_f, cand_list.size());
                _levels.push_back(std::move(lvl));
                auto & cur = _levels.back();
                const auto & before = _levels[m - 1];

                for (const auto & rel : _rels) {
                    if (rel.length > m)
                        continue;
                    auto rest = m - rel.length;
                    const auto & base = _levels[rest];
                    for (size_t b = 0; b < base.words.size(); ++b) {
                        if (base.target[b] != rel.source)
                            continue;
                        Vector<F> v(cand_list.size(), _f.zero());
                        for (const auto & [c, w] : rel.terms) {
                            vector<size_t> tail(w.begin() + 1, w.end());
                            Vector<F> prev_nf;
                            if (rest == 0 && tail.empty()) {
                                prev_nf.assign(_levels[0].words.size(), _f.zero());
                                prev_nf[b] = _f.one();
                            }
                            else {
                                tail.insert(tail.end(), base.words[b].begin(), base.words[b].end());
                                prev_nf = normal_form(tail);
                            }
                            auto cv = candidate_vector(m, w[0], prev_nf);
                            for (size_t k = 0; k < v.size(); ++k)
                                v[k] = _f.add(v[k], _f.mul(c, cv[k]));
                        }
                        cur.ideal->add(v);
                    }
                }
                cur.basis_candidates = cur.ideal->non_pivots();
                for (auto c : cur.basis_candidates) {
                    auto [a, b] = cand_list[c];
                    vector<size_t> w{a};
                    w.insert(w.end(), before.words[b].begin(), before.words[b].end());
                    cur.words.push_back(std::move(w));
                    cur.source.push_back(before.source[b]);
                    cur.target.push_back(_q.arrows[a].target);
                }
            }

            const QuiverPresentation & _q;
            F _f;
            const vector<ParsedRelation<F>> & _rels;
            vector<Level> _levels;
        };

        // Ideal closure inside kQ / J^N for relations of mixed length.
        template <Field F>
        class TruncatedBuilder
        {
        public:
            static constexpr size_t path_limit = 20000;

            TruncatedBuilder(const QuiverPresentation & q, const F & f, const vector<ParsedRelation<F>> & rels, size_t cap) :
                _q(q),
                _f(f)
            {
                size_t max_len = 0;
                for (const auto & r : rels)
                    for (const auto & t : r.terms)
                        max_len = std::max(max_len, t.second.size());
                for (size_t n = max_len + 1; n <= cap + 1; ++n)
                    if (attempt(rels, n))
                        return;
                throw NotFiniteDimensional("relations do not cut the path algebra down below the degree cap " + std::to_string(cap));
            }

            vector<vector<size_t>> words;
            vector<size_t> source, target;
            size_t truncation = 0;

            auto normal_form(const vector<size_t> & word) const -> Vector<F>
            {
                Vector<F> out(_basis.size(), _f.zero());
                if (word.size() >= truncation)
                    return out;
                auto it = _index.find(word);
                Vector<F> v(_paths.size(), _f.zero());
                v[it->second] = _f.one();
                auto r = _ideal->reduce(v);
                for (size_t k = 0; k < _basis.size(); ++k)
                    out[k] = r[_basis[k]];
                return out;
            }

        private:
            auto attempt(const vector<ParsedRelation<F>> & rels, size_t n) -> bool
            {
                // all paths of length < n, longest first so pivots land on long paths
                vector<vector<vector<size_t>>> by_len(n);
                vector<vector<size_t>> src(n), tgt(n);
                for (size_t v = 0; v < _q.vertex_count; ++v) {
                    by_len[0].push_back({});
                    src[0].push_back(v);
                    tgt[0].push_back(v);
                }
                size_t total = _q.vertex_count;
                for (size_t l = 1; l < n; ++l)
                    for (size_t i = 0; i < by_len[l - 1].size(); ++i)
                        for (size_t a = 0; a < _q.arrows.size(); ++a)
                            if (_q.arrows[a].source == tgt[l - 1][i]) {
                                vector<size_t> w{a};
                                w.insert(w.end(), by_len[l - 1][i].begin(), by_len[l - 1][i].end());
                                by_len[l].push_back(std::move(w));
                                src[l].push_back(src[l - 1][i]);
                                tgt[l].push_back(_q.arrows[a].target);
                                if (++total > path_limit)
                                    throw NotFiniteDimensional("path space exceeds " + std::to_string(path_limit) + " paths before the relations close up");
                            }
                _paths.clear();
                _index.clear();
                _psrc.clear();
                _ptgt.clear();
                _trivial.clear();
                for (size_t l = n; l-- > 0;)
                    for (size_t i = 0; i < by_len[l].size(); ++i) {
                        if (l == 0)
                            _trivial.push_back(_paths.size());
                        _index[by_len[l][i]] = _paths.size();
                        _paths.push_back(by_len[l][i]);
                        _psrc.push_back(src[l][i]);
                        _ptgt.push_back(tgt[l][i]);
                    }

                _ideal.emplace(_f, _paths.size());
                vector<Vector<F>> queue;
                for (const auto & r : rels) {
                    Vector<F> v(_paths.size(), _f.zero());
                    for (const auto & [c, w] : r.terms)
                        if (w.size() < n)
                            v[_index[w]] = _f.add(v[_index[w]], c);
                    if (_ideal->add(v))
                        queue.push_back(std::move(v));
                }
                while (! queue.empty()) {
                    auto v = std::move(queue.back());
                    queue.pop_back();
                    for (size_t a = 0; a < _q.arrows.size(); ++a)
                        for (bool left : {true, false}) {
                            Vector<F> w(_paths.size(), _f.zero());
                            bool any = false;
                            for (size_t k = 0; k < _paths.size(); ++k) {
                                if (_f.is_zero(v[k]) || _paths[k].size() + 1 >= n)
                                    continue;
                                vector<size_t> word;
                                if (left) {
                                    if (_q.arrows[a].source != _ptgt[k] || _paths[k].empty())
                                        continue;
                                    word.push_back(a);
                                    word.insert(word.end(), _paths[k].begin(), _paths[k].end());
                                }
                                else {
                                    if (_q.arrows[a].target != _psrc[k] || _paths[k].empty())
                                        continue;
                                    word = _paths[k];
                                    word.push_back(a);
                                }
                                auto idx = _index[word];
                                w[idx] = _f.add(w[idx], v[k]);
                                any = true;
                            }
                            if (any && _ideal->add(w))
                                queue.push_back(std::move(w));
                        }
                }
                for (const auto & w : by_len[n - 1]) {
                    Vector<F> v(_paths.size(), _f.zero());
                    v[_index[w]] = _f.one();
                    if (! _ideal->contains(v))
                        return false;
                }
                truncation = n;
                _basis = _ideal->non_pivots();
                words.clear();
                source.clear();
                target.clear();
                for (auto k : _basis) {
                    words.push_back(_paths[k]);
                    source.push_back(_psrc[k]);
                    target.push_back(_ptgt[k]);
                }
                return true;
            }

            const QuiverPresentation & _q;
            F _f;
            vector<vector<size_t>> _paths;
            std::map<vector<size_t>, size_t> _index;
            vector<size_t> _psrc, _ptgt, _trivial, _basis;
            optional<Subspace<F>> _ideal;
        };
    }

    template <Field F>
    auto build_algebra(const QuiverPresentation & q, const F & field, size_t degree_cap) -> typename Algebra<F>::Ptr
    {
        if (degree_cap == 0)
            degree_cap = std::max<size_t>(2 * q.arrows.size() * q.vertex_count, 2);

        vector<ParsedRelation<F>> rels;
        bool homogeneous = true;
        for (const auto & r : q.relations) {
            ParsedRelation<F> pr;
            auto ends = *word_endpoints(q, r[0].word);
            pr.source = ends.first;
            pr.target = ends.second;
            pr.length = r[0].word.size();
            std::map<vector<size_t>, typename F::Element> combined;
            for (const auto & t : r) {
                if (t.word.size() < 2) {
                    string name;
                    for (auto a : t.word)
                        name += q.arrows[a].name;
                    throw NonAdmissible("relation term '" + name + "' has length below 2");
                }
                if (t.word.size() != pr.length)
                    homogeneous = false;
                auto c = field.parse(t.coeff);
                auto [it, inserted] = combined.emplace(t.word, c);
                if (! inserted)
                    it->second = field.add(it->second, c);
            }
            for (auto & [w, c] : combined)
                if (! field.is_zero(c))
                    pr.terms.emplace_back(c, w);
            if (! pr.terms.empty())
                rels.push_back(std::move(pr));
        }

        vector<vector<size_t>> words;
        vector<size_t> source, target;
        std::function<Vector<F>(const vector<size_t> &)> nf_global;
        vector<size_t> level_offset;

        optional<GradedBuilder<F>> graded;
        optional<TruncatedBuilder<F>> truncated;
        if (homogeneous) {
            graded.emplace(q, field, rels, degree_cap);
            for (size_t m = 0; m < graded->levels(); ++m) {
                level_offset.push_back(words.size());
                const auto & w = graded->level_words(m);
                words.insert(words.end(), w.begin(), w.end());
                source.insert(source.end(), graded->level_source(m).begin(), graded->level_source(m).end());
                target.insert(target.end(), graded->level_target(m).begin(), graded->level_target(m).end());
            }
        }
        else {
            truncated.emplace(q, field, rels, degree_cap);
            words = truncated->words;
            source = truncated->source;
            target = truncated->target;
        }
        auto raw_dim = words.size();

        // coordinates of a word in the raw basis order
        auto raw_nf = [&](const vector<size_t> & w) -> Vector<F> {
            Vector<F> out(raw_dim, field.zero());
            if (homogeneous) {
                auto nf = graded->normal_form(w);
                for (size_t k = 0; k < nf.size(); ++k)
                    out[level_offset[w.size()] + k] = nf[k];
            }
            else {
                out = truncated->normal_form(w);
            }
            return out;
        };

        // final order: by source vertex, then length, then construction order
        vector<size_t> perm(raw_dim);
        for (size_t i = 0; i < raw_dim; ++i)
            perm[i] = i;
        std::stable_sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
            if (source[a] != source[b])
                return source[a] < source[b];
            return words[a].size() < words[b].size();
        });
        vector<size_t> position(raw_dim);
        for (size_t i = 0; i < raw_dim; ++i)
            position[perm[i]] = i;

        typename Algebra<F>::Data data;
        data.field = field;
        for (size_t v = 0; v < q.vertex_count; ++v)
            data.vertex_names.push_back(std::to_string(v + 1));
        data.idempotents.assign(q.vertex_count, 0);
        PathData paths;
        for (const auto & a : q.arrows) {
            paths.arrow_names.push_back(a.name);
            paths.arrow_source.push_back(a.source);
            paths.arrow_target.push_back(a.target);
        }
        for (auto r : perm) {
            string label;
            if (words[r].empty()) {
                label = "e" + std::to_string(source[r] + 1);
                data.idempotents[source[r]] = data.labels.size();
            }
            for (size_t k = 0; k < words[r].size(); ++k) {
                if (k > 0)
                    label += '*';
                label += q.arrows[words[r][k]].name;
            }
            data.labels.push_back(label);
            data.source.push_back(source[r]);
            data.target.push_back(target[r]);
            paths.words.push_back(words[r]);
        }

        auto d = raw_dim;
        data.products.resize(d * d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                const auto & p = paths.words[i];
                const auto & s = paths.words[j];
                if (data.source[i] != data.target[j])
                    continue;
                if (p.empty()) {
                    data.products[i * d + j].push_back({j, field.one()});
                    continue;
                }
                if (s.empty()) {
                    data.products[i * d + j].push_back({i, field.one()});
                    continue;
                }
                vector<size_t> w = p;
                w.insert(w.end(), s.begin(), s.end());
                auto nf = raw_nf(w);
                vector<typename Algebra<F>::Term> terms;
                for (size_t k = 0; k < d; ++k)
                    if (! field.is_zero(nf[k]))
                        terms.push_back({position[k], nf[k]});
                std::sort(terms.begin(), terms.end(), [](const auto & a, const auto & b) { return a.index < b.index; });
                data.products[i * d + j] = std::move(terms);
            }
        data.order = q.order;
        data.paths = std::move(paths);
        return Algebra<F>::create(std::move(data));
    }

    template auto build_algebra<PrimeField>(const QuiverPresentation &, const PrimeField &, size_t) -> Algebra<PrimeField>::Ptr;
    template auto build_algebra<RationalField>(const QuiverPresentation &, const RationalField &, size_t) -> Algebra<RationalField>::Ptr;
}
