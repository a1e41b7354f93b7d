// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
//
// scfec-sim: sweeps SNR for a staircase code over M-PAM/AWGN and reports
// post-decoder BER per decoding mode as CSV or a JSON run manifest.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "scfec/cli.hpp"

int main(int argc, char** argv) {
    using namespace scfec;
    std::vector<std::string> args(argv + 1, argv + argc);
    CliConfig cfg;
    try {
        cfg = parse_args(args);
        if (!cfg.replay.empty()) {
            std::ifstream f(cfg.replay);
            if (!f) throw IoError("cannot open manifest: " + cfg.replay);
            nlohmann::json j;
            f >> j;
            CliConfig replayed = config_from_manifest(manifest_from_json(j));
            replayed.out = cfg.out;
            replayed.format = cfg.format;
            cfg = replayed;
        }
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad manifest: " << e.what() << "\n";
        return 3;
    }

    try {
        RunManifest manifest = run_configured(cfg, [](int done, int total, const SimPoint& pt) {
            std::fprintf(stderr, "[%d/%d] mode=%s snr=%.4gdB ber=%.4g errors=%llu bits=%llu (%.1fs)\n",
                         done, total, to_string(pt.mode), pt.snr_db, pt.ber(),
                         static_cast<unsigned long long>(pt.bit_errors),
                         static_cast<unsigned long long>(pt.bits), pt.seconds);
        });
        emit_results(manifest, cfg.format, cfg.out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
