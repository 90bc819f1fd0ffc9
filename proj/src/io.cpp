#include "vqfp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace vqfp {

namespace {

Matrix matrix_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ParseError(what + ": expected a dense row-major matrix");
    const size_t rows = j.size();
    const size_t cols = j[0].size();
    Matrix M(static_cast<int>(rows), static_cast<int>(cols));
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError(what + ": ragged matrix rows");
        for (size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw ParseError(what + ": non-numeric entry");
            M(static_cast<int>(r), static_cast<int>(c)) = j[r][c].get<double>();
        }
    }
    return M;
}

QuadraticFunction quadratic_from_json(const Json& j, const char* mat, const char* vec,
                                      const char* scal, const std::string& what,
                                      double sym_pre) {
    QuadraticFunction q;
    q.Q = matrix_from_json(j.at(mat), what);
    symmetrize(q.Q, sym_pre, what);
    q.c = vector_from_json(j.at(vec), what);
    if (!j.at(scal).is_number()) throw ParseError(what + ": non-numeric scalar");
    q.d = j.at(scal).get<double>();
    return q;
}

}  // namespace

Vector vector_from_json(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array");
    Vector v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ParseError(what + ": non-numeric entry");
        v(static_cast<int>(i)) = j[i].get<double>();
    }
    return v;
}

ProblemInstance instance_from_json(const Json& j, const Tolerances& tol) {
    ProblemInstance p;
    try {
        p.n = j.at("n").get<int>();
        for (const Json& jo : j.at("objectives")) {
            RatioObjective obj;
            obj.f = quadratic_from_json(jo, "A", "a", "a0", "objective numerator", tol.sym_pre);
            obj.g = quadratic_from_json(jo, "B", "b", "b0", "objective denominator",
                                        tol.sym_pre);
            p.objectives.push_back(obj);
        }
        if (j.contains("constraints")) {
            for (const Json& jc : j.at("constraints")) {
                const std::string type = jc.at("type").get<std::string>();
                if (type == "affine") {
                    AffineConstraint c;
                    c.a = vector_from_json(jc.at("a"), "affine constraint");
                    c.b = jc.at("b").get<double>();
                    p.constraints.emplace_back(c);
                } else if (type == "quadratic") {
                    QuadraticConstraint c;
                    c.Q = matrix_from_json(jc.at("Q"), "quadratic constraint");
                    symmetrize(c.Q, tol.sym_pre, "quadratic constraint");
                    c.c = vector_from_json(jc.at("c"), "quadratic constraint");
                    c.d = jc.at("d").get<double>();
                    p.constraints.emplace_back(c);
                } else if (type == "box") {
                    Box box;
                    box.lo = vector_from_json(jc.at("lo"), "box constraint");
                    box.hi = vector_from_json(jc.at("hi"), "box constraint");
                    if (box.lo.size() != box.hi.size())
                        throw ParseError("box constraint: lo/hi length mismatch");
                    if (p.bounds) throw ParseError("at most one box constraint is allowed");
                    p.bounds = box;
                    for (int i = 0; i < box.lo.size(); ++i) {
                        AffineConstraint up, dn;
                        up.a = Vector::Zero(box.lo.size());
                        up.a(i) = 1.0;
                        up.b = -box.hi(i);
                        dn.a = Vector::Zero(box.lo.size());
                        dn.a(i) = -1.0;
                        dn.b = box.lo(i);
                        p.constraints.emplace_back(up);
                        p.constraints.emplace_back(dn);
                    }
                } else {
                    throw ParseError("unknown constraint type: " + type);
                }
            }
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("instance parse failure: ") + e.what());
    }
    validate_instance(p, tol);
    return p;
}

ProblemInstance load_instance(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return instance_from_json(j, tol);
}

Json to_json(const Vector& v) {
    Json j = Json::array();
    for (int i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

Json to_json(const Matrix& M) {
    Json j = Json::array();
    for (int r = 0; r < M.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        j.push_back(row);
    }
    return j;
}

Json instance_to_json(const ProblemInstance& p) {
    Json j;
    j["vqfp-schema"] = 1;
    j["n"] = p.n;
    j["objectives"] = Json::array();
    for (const RatioObjective& obj : p.objectives) {
        Json jo;
        jo["A"] = to_json(obj.f.Q);
        jo["a"] = to_json(obj.f.c);
        jo["a0"] = obj.f.d;
        jo["B"] = to_json(obj.g.Q);
        jo["b"] = to_json(obj.g.c);
        jo["b0"] = obj.g.d;
        j["objectives"].push_back(jo);
    }
    j["constraints"] = Json::array();
    // Box-derived affine rows are re-emitted as the box itself.
    size_t skip_from = p.constraints.size();
    if (p.bounds) {
        skip_from = p.constraints.size() - 2 * static_cast<size_t>(p.n);
    }
    for (size_t k = 0; k < skip_from; ++k) {
        const Constraint& c = p.constraints[k];
        if (const auto* a = std::get_if<AffineConstraint>(&c)) {
            Json jc;
            jc["type"] = "affine";
            jc["a"] = to_json(a->a);
            jc["b"] = a->b;
            j["constraints"].push_back(jc);
        } else {
            const auto& q = std::get<QuadraticConstraint>(c);
            Json jc;
            jc["type"] = "quadratic";
            jc["Q"] = to_json(q.Q);
            jc["c"] = to_json(q.c);
            jc["d"] = q.d;
            j["constraints"].push_back(jc);
        }
    }
    if (p.bounds) {
        Json jc;
        jc["type"] = "box";
        jc["lo"] = to_json(p.bounds->lo);
        jc["hi"] = to_json(p.bounds->hi);
        j["constraints"].push_back(jc);
    }
    return j;
}

void save_instance(const ProblemInstance& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << instance_to_json(p).dump(2) << "\n";
}

Json to_json(const MultiplierPair& mp) {
    Json j;
    j["tau"] = to_json(mp.tau);
    j["lambda"] = to_json(mp.lambda);
    j["stationarity_residual"] = mp.stationarity_residual;
    j["complementarity_residual"] = mp.complementarity_residual;
    return j;
}

Json to_json(const Certificate& cert) {
    Json j;
    j["point"] = to_json(cert.point);
    j["status"] = to_string(cert.status);
    if (cert.route) j["route"] = to_string(*cert.route);
    if (cert.multipliers) j["multipliers"] = to_json(*cert.multipliers);
    if (cert.z_min_value) j["z_min_value"] = *cert.z_min_value;
    if (cert.witness) j["witness"] = to_json(*cert.witness);
    j["tolerances"] = cert.tolerances;
    if (!cert.note.empty()) j["note"] = cert.note;
    if (!cert.reason.empty()) j["reason"] = cert.reason;
    return j;
}

Json to_json(const DominanceReport& rep) {
    Json j;
    j["query"] = to_json(rep.query);
    j["dominated"] = rep.dominated;
    j["weakly_dominated"] = rep.weakly_dominated;
    if (rep.dominator) j["dominator"] = to_json(*rep.dominator);
    j["grid_step"] = rep.grid_step;
    j["points_checked"] = rep.points_checked;
    return j;
}

Json to_json(const DualPoint& dp) {
    Json j;
    j["u"] = to_json(dp.u);
    j["tau"] = to_json(dp.tau);
    j["lambda"] = to_json(dp.lambda);
    j["stationarity_residual"] = dp.stationarity_residual;
    j["lambda_h_sign"] = dp.lambda_h_sign;
    return j;
}

Json to_json(const DinkelbachResult& dr) {
    Json j;
    j["converged"] = dr.converged;
    j["x"] = to_json(dr.x);
    j["iterations"] = dr.iterations;
    if (!dr.stall_reason.empty()) j["stall_reason"] = dr.stall_reason;
    j["step1_found"] = dr.step1_found;
    Json hist = Json::array();
    for (const Vector& a : dr.alpha_history) hist.push_back(to_json(a));
    j["alpha_history"] = hist;
    return j;
}

Vector parse_vector(const std::string& text) {
    std::vector<double> vals;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        const size_t first = tok.find_first_not_of(" \t");
        if (first == std::string::npos) throw ParseError("empty vector component");
        const size_t last = tok.find_last_not_of(" \t");
        tok = tok.substr(first, last - first + 1);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw ParseError("bad vector component: " + tok);
        vals.push_back(v);
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    Vector out(static_cast<int>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) out(static_cast<int>(i)) = vals[i];
    return out;
}

}  // namespace vqfp
