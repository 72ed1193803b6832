#include "relmod/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace relmod {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    json re = json::array(), im = json::array();
    for (int i = 0; i < n; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < n; ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j, int dim, const std::string& where) {
    if (!j.contains("re") || !j.contains("im"))
        throw InputError(where + ": block needs 're' and 'im' arrays");
    const json& re = j["re"];
    const json& im = j["im"];
    if (static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim)
        throw InputError(where + ": block row count does not match algebra");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(re[i].size()) != dim || static_cast<int>(im[i].size()) != dim)
            throw InputError(where + ": block column count does not match algebra");
        for (int j2 = 0; j2 < dim; ++j2)
            m(i, j2) = Complex(re[i][j2].get<double>(), im[i][j2].get<double>());
    }
    return m;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string serialize_instance(const InstanceFile& inst) {
    json j;
    j["algebra"] = {{"blocks", inst.algebra.blocks}};
    j["metadata"] = {{"seed", inst.seed},
                     {"description", inst.description},
                     {"prior_p", inst.prior_p}};
    json funcs = json::object();
    for (const auto& [name, blocks] : inst.functionals) {
        json arr = json::array();
        for (const Matrix& b : blocks) arr.push_back(matrix_to_json(b));
        funcs[name] = std::move(arr);
    }
    j["functionals"] = std::move(funcs);
    return j.dump(2) + "\n";
}

InstanceFile parse_instance(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
    if (!j.contains("algebra") || !j["algebra"].contains("blocks"))
        throw InputError(origin + ": missing algebra.blocks");
    std::vector<int> blocks = j["algebra"]["blocks"].get<std::vector<int>>();
    InstanceFile inst{Algebra(blocks), {}, 0, "", 0.5};
    if (j.contains("metadata")) {
        const json& md = j["metadata"];
        if (md.contains("seed")) inst.seed = md["seed"].get<std::uint64_t>();
        if (md.contains("description")) inst.description = md["description"].get<std::string>();
        if (md.contains("prior_p")) inst.prior_p = md["prior_p"].get<double>();
    }
    if (j.contains("functionals")) {
        for (const auto& [name, arr] : j["functionals"].items()) {
            if (static_cast<int>(arr.size()) != inst.algebra.num_blocks())
                throw InputError(origin + ": functional '" + name +
                                 "' has wrong block count");
            std::vector<Matrix> mats;
            for (int k = 0; k < inst.algebra.num_blocks(); ++k) {
                Matrix m = matrix_from_json(arr[k], inst.algebra.blocks[k],
                                            origin + ":" + name);
                const double asym = (m - m.adjoint()).norm();
                if (asym > 1e-8 * std::max(1.0, m.norm()))
                    throw InputError(origin + ": functional '" + name +
                                     "' block is not Hermitian");
                mats.push_back(hermitize(m));
            }
            inst.functionals[name] = std::move(mats);
        }
    }
    return inst;
}

void save_instance(const std::string& path, const InstanceFile& inst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("save_instance: cannot open " + path);
    out << serialize_instance(inst);
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("load_instance: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str(), path);
}

NormalFunctional functional_from(const InstanceFile& inst, const std::string& name,
                                 const TolerancePolicy& tol) {
    auto it = inst.functionals.find(name);
    if (it == inst.functionals.end())
        throw InputError("functional '" + name + "' not present in instance");
    try {
        return NormalFunctional(inst.algebra, it->second, tol);
    } catch (const NotPSDError& e) {
        throw InputError("functional '" + name + "': " + e.what());
    }
}

}  // namespace relmod
