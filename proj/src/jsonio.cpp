#include "fssm/jsonio.hpp"

#include <fstream>
#include <stdexcept>

namespace fssm {

nlohmann::json mat_to_json(const Mat& A) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        std::vector<double> row(A.cols());
        for (Eigen::Index k = 0; k < A.cols(); ++k) row[k] = A(i, k);
        j.push_back(row);
    }
    return j;
}

Mat mat_from_json(const nlohmann::json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Mat A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) A(i, k) = j[i][k].get<double>();
    return A;
}

nlohmann::json cmat_to_json(const MatC& A) { return {{"re", mat_to_json(A.real())}, {"im", mat_to_json(A.imag())}}; }

MatC cmat_from_json(const nlohmann::json& j) {
    const Mat re = mat_from_json(j.at("re")), im = mat_from_json(j.at("im"));
    MatC A(re.rows(), re.cols());
    A.real() = re;
    A.imag() = im;
    return A;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << j.dump(1) << '\n';
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("missing file: " + path);
    return nlohmann::json::parse(f);
}

}  // namespace fssm
