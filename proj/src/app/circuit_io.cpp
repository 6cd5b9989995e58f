// Copyright 2026 The phosmo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phosmo/app/circuit_io.hpp"

#include <fstream>

#include "phosmo/app/config.hpp"

namespace phosmo::app {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError("circuit: complex numbers are written [re, im]");
    }
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

json circuit_to_json(const CircuitSpec &spec) {
    json doc;
    doc["modes"] = spec.modes();
    doc["photons"] = spec.photons();
    doc["params"] = spec.param_count();
    json input = json::array();
    const auto &amps = spec.input().amplitudes();
    for (std::size_t i = 0; i < spec.sector()->size(); ++i) {
        const Complex a = amps(static_cast<Eigen::Index>(i));
        if (a != Complex(0.0, 0.0)) {
            input.push_back({{"occupation", spec.sector()->occupation(i).counts}, {"amplitude", complex_to_json(a)}});
        }
    }
    doc["input"] = input;
    doc["outcome"] = spec.outcome().counts;
    json elements = json::array();
    for (const auto &element : spec.elements()) {
        if (const auto *ps = std::get_if<PhaseShifter>(&element)) {
            json e{{"type", "phase_shifter"}, {"mode", ps->mode}, {"constant", ps->expr.constant}};
            if (ps->expr.offset_param) {
                e["offset_param"] = *ps->expr.offset_param;
            }
            if (ps->expr.scale_param) {
                e["scale_param"] = *ps->expr.scale_param;
            }
            if (ps->expr.feature) {
                e["feature"] = *ps->expr.feature;
            }
            elements.push_back(e);
        } else {
            const auto &bs = std::get<Beamsplitter>(element);
            json e{{"type", "beamsplitter"}, {"modes", {bs.mode_a, bs.mode_b}}};
            if (!(bs.matrix == beamsplitter_5050())) {
                e["matrix"] = {{complex_to_json(bs.matrix(0, 0)), complex_to_json(bs.matrix(0, 1))},
                               {complex_to_json(bs.matrix(1, 0)), complex_to_json(bs.matrix(1, 1))}};
            }
            elements.push_back(e);
        }
    }
    doc["elements"] = elements;
    return doc;
}

CircuitSpec circuit_from_json(const json &doc) {
    try {
        const int modes = doc.at("modes").get<int>();
        const int photons = doc.at("photons").get<int>();
        const int params = doc.at("params").get<int>();
        const SectorPtr sector = sector_basis(modes, photons);

        Eigen::VectorXcd input = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
        for (const auto &entry : doc.at("input")) {
            Occupation occ{entry.at("occupation").get<std::vector<int>>()};
            input(static_cast<Eigen::Index>(sector->require_index(occ))) += complex_from_json(entry.at("amplitude"));
        }
        Occupation outcome{doc.at("outcome").get<std::vector<int>>()};

        std::vector<Element> elements;
        for (const auto &e : doc.at("elements")) {
            const std::string type = e.at("type").get<std::string>();
            if (type == "phase_shifter") {
                PhaseShifter ps;
                ps.mode = e.at("mode").get<int>();
                ps.expr.constant = e.value("constant", 0.0);
                if (e.contains("offset_param")) {
                    ps.expr.offset_param = e.at("offset_param").get<int>();
                }
                if (e.contains("scale_param")) {
                    ps.expr.scale_param = e.at("scale_param").get<int>();
                }
                if (e.contains("feature")) {
                    ps.expr.feature = e.at("feature").get<int>();
                }
                elements.emplace_back(ps);
            } else if (type == "beamsplitter") {
                Beamsplitter bs;
                const auto pair = e.at("modes").get<std::vector<int>>();
                if (pair.size() != 2) {
                    throw ConfigError("circuit: beamsplitter 'modes' needs two entries");
                }
                bs.mode_a = pair[0];
                bs.mode_b = pair[1];
                if (e.contains("matrix")) {
                    const auto &m = e.at("matrix");
                    for (int r = 0; r < 2; ++r) {
                        for (int c = 0; c < 2; ++c) {
                            bs.matrix(r, c) = complex_from_json(m.at(r).at(c));
                        }
                    }
                }
                elements.emplace_back(bs);
            } else {
                throw ConfigError("circuit: unknown element type '" + type + "'");
            }
        }
        return CircuitSpec(modes, photons, std::move(elements), std::move(input), std::move(outcome), params);
    } catch (const json::exception &ex) {
        throw ConfigError(std::string("circuit: malformed document: ") + ex.what());
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &ex) {
        throw ConfigError(std::string("circuit: ") + ex.what());
    }
}

CircuitSpec load_circuit(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read circuit file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &ex) {
        throw ConfigError("circuit file " + path.string() + ": " + ex.what());
    }
    return circuit_from_json(doc);
}

}  // namespace phosmo::app
