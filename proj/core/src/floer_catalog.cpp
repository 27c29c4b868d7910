#include "confloer/floer_catalog.hpp"

namespace confloer {

EquivariantComplex catalog_complex(const std::string& name, Flavor flavor, long p) {
    auto tower_only = [&](int n) {
        return flavor == Flavor::S1 ? build_s1_complex(n, {}, p) : build_pin2_complex(n, {});
    };
    if (name == "S3") return tower_only(0);
    if (name == "Sigma_2_3_5") return tower_only(-1);
    if (name == "Sigma_2_3_11") {
        if (flavor == Flavor::S1) {
            IrreducibleSpec x{"x", 1, {{true, -1, 1}}, {}, {}, {}};
            IrreducibleSpec y{"y", 1, {{true, -1, 1}}, {}, {}, {}};
            return build_s1_complex(0, {x, y}, p);
        }
        IrreducibleSpec x{"x", 1, {{true, -1, 1}}, {}, {}, {}};
        return build_pin2_complex(0, {x});
    }
    fail(ErrorCode::InvalidInput, "unknown catalog complex: " + name);
}

std::vector<std::string> floer_catalog_names() { return {"S3", "Sigma_2_3_5", "Sigma_2_3_11"}; }

} // namespace confloer
