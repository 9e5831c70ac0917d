#include <sstream>

#include "json.hpp"
#include "rsbeta/engine.hpp"

namespace rsbeta {

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["identity"] = identity;
    j["ranks"] = rank_m > 0 ? nlohmann::json{rank_n, rank_m} : nlohmann::json{rank_n};
    j["nu"] = nu;
    j["seed"] = seed;
    j["lhs"] = {lhs.real(), lhs.imag()};
    j["lhs_err"] = lhs_err;
    j["rhs"] = {rhs.real(), rhs.imag()};
    j["rel_err"] = rel_err;
    j["pass"] = pass;
    j["shells"] = shells;
    j["evals"] = evals;
    j["seconds"] = seconds;
    if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
    return j.dump(2);
}

std::string VerificationReport::csv_header() {
    return "identity,rank_n,rank_m,nu,seed,lhs_re,lhs_im,lhs_err,rhs_re,rhs_im,"
           "rel_err,pass,shells,evals,seconds";
}

std::string VerificationReport::to_csv_row() const {
    std::ostringstream os;
    os.precision(16);
    os << identity << ',' << rank_n << ',' << rank_m << ',' << nu << ',' << seed << ','
       << lhs.real() << ',' << lhs.imag() << ',' << lhs_err << ',' << rhs.real() << ','
       << rhs.imag() << ',' << rel_err << ',' << (pass ? 1 : 0) << ',' << shells << ',' << evals
       << ',' << seconds;
    return os.str();
}

std::string VerificationReport::md_header() {
    return "| identity | ranks | nu | seed | rel_err | pass | shells | evals | seconds |\n"
           "|---|---|---|---|---|---|---|---|---|";
}

std::string VerificationReport::to_md_row() const {
    std::ostringstream os;
    os.precision(4);
    os << "| " << identity << " | " << rank_n;
    if (rank_m > 0) os << "," << rank_m;
    os << " | " << nu << " | " << seed << " | " << std::scientific << rel_err << " | "
       << (pass ? "yes" : "NO") << " | " << shells << " | " << evals << " | " << seconds << " |";
    return os.str();
}

} // namespace rsbeta
