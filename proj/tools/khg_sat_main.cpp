// khg-sat: standalone DIMACS CNF solver used as the default external SAT
// backend. Reads the CNF file given as the last argument and prints the
// conventional result lines:
//   s SATISFIABLE / s UNSATISFIABLE
//   v <lit> ... 0            (model, when satisfiable)
// Exit codes follow solver convention: 10 SAT, 20 UNSAT, 1 error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "khg/cnf.hpp"
#include "khg/error.hpp"
#include "khg/sat_solver.hpp"

int main(int argc, char** argv) {
    std::string path;
    khg::SatSolver::Config cfg;
    // branch polarity differs from the library's in-process default, so an
    // external run explores a different search order than an internal one
    cfg.default_polarity = true;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--polarity-false")
            cfg.default_polarity = false;
        else if (arg == "--help" || arg == "-h") {
            std::cout << "usage: khg-sat [--polarity-false] <cnf-file>\n";
            return 0;
        } else
            path = arg;
    }
    if (path.empty()) {
        std::cerr << "khg-sat: no input file\n";
        return 1;
    }
    try {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "khg-sat: cannot open '" << path << "'\n";
            return 1;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        const khg::CnfInstance inst = khg::parse_dimacs(ss.str());
        khg::SatSolver solver(inst.n_vars, cfg);
        for (const auto& c : inst.clauses) solver.add_clause(c);
        switch (solver.solve()) {
            case khg::SatSolver::Result::Sat: {
                std::cout << "s SATISFIABLE\n";
                std::string line = "v";
                for (int v = 1; v <= inst.n_vars; ++v) {
                    line += ' ';
                    if (!solver.model()[static_cast<std::size_t>(v)]) line += '-';
                    line += std::to_string(v);
                    if (line.size() > 72) {
                        std::cout << line << "\n";
                        line = "v";
                    }
                }
                std::cout << line << " 0\n";
                return 10;
            }
            case khg::SatSolver::Result::Unsat:
                std::cout << "s UNSATISFIABLE\n";
                return 20;
            case khg::SatSolver::Result::Unknown:
                std::cout << "s UNKNOWN\n";
                return 1;
        }
    } catch (const khg::Error& e) {
        std::cerr << "khg-sat: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "khg-sat: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
