// Command-line surface: encrypt/decrypt, key audit, the attacks, and the
// CSV experiment harness. Every command is deterministic given its full
// argument list; generated images always come from an explicit seed.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoscrack/attacks.hpp"
#include "chaoscrack/audit.hpp"
#include "chaoscrack/cipher.hpp"
#include "chaoscrack/errors.hpp"
#include "chaoscrack/image.hpp"
#include "chaoscrack/key.hpp"

namespace {

using namespace chaoscrack;

RgbImage noise_image(int width, int height, std::uint64_t seed) {
    RgbImage img = make_image(width, height);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& b : img.data) {
        b = static_cast<std::uint8_t>(byte(rng));
    }
    return img;
}

RgbImage gradient_image(int width, int height) {
    RgbImage img = make_image(width, height);
    std::size_t i = 0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            img.data[i++] = static_cast<std::uint8_t>(x);
            img.data[i++] = static_cast<std::uint8_t>(y);
            img.data[i++] = static_cast<std::uint8_t>(x + y);
        }
    }
    return img;
}

// Writes to the --csv path when given, standard output otherwise. The first
// line records the exact inputs so every table is reproducible on its own.
class CsvSink {
  public:
    CsvSink(const std::string& path, const std::string& provenance, const std::string& header) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open CSV output: " + path);
            }
        }
        out() << "# " << provenance << "\n" << header << "\n";
    }

    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string key_seed_note(const SecretKey* key, const std::uint64_t* seed) {
    std::string note;
    if (key != nullptr) {
        note += "key=" + key->to_hex();
    }
    if (seed != nullptr) {
        note += note.empty() ? "" : " ";
        note += "seed=" + std::to_string(*seed);
    }
    return note.empty() ? "no inputs" : note;
}

struct CommonArgs {
    std::string key_hex;
    std::string in_path;
    std::string out_path;
    std::string csv_path;
    std::uint64_t seed = 1;
    int width = 256;
    int height = 256;
    int trials = 1024;
    int images = 128;
    int grid_bits = 16;
};

int cmd_crypt(const CommonArgs& args, Direction dir) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const RgbImage in = load_ppm(std::filesystem::path(args.in_path));
    save_ppm(process_image_parallel(in, key, dir), std::filesystem::path(args.out_path));
    return 0;
}

int cmd_audit(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const KeyAuditReport report = audit_key(key);
    auto& os = std::cout;
    os << "key               " << key.to_hex() << "\n";
    os << "x0_invalid        " << (report.x0_invalid ? "yes" : "no");
    if (report.invalid_witness) {
        os << " (witness C=" << *report.invalid_witness << ")";
    }
    os << "\n";
    os << "subkey_period     " << report.period << "\n";
    os << "k10_zero          " << (report.k10_zero ? "yes" : "no") << "\n";
    os << "k10_one           " << (report.k10_one ? "yes" : "no") << "\n";
    os << "k10_recommended   " << (report.k10_recommended ? "yes" : "no") << "\n";
    os << "visual_leak       r=" << report.visual.red << " g=" << report.visual.green
       << " b=" << report.visual.blue << " whole=" << report.visual.whole_image << "\n";
    os << "nibble_swap_orbit ";
    for (const auto& k : report.nibble_swap_orbit) {
        os << k.to_hex() << " ";
    }
    os << "\n";
    os << "msb_flip_orbit    ";
    for (const auto& k : report.msb_flip_orbit) {
        os << k.to_hex() << " ";
    }
    os << "\n";
    os << "log2_keyspace     " << report.log2_keyspace << "\n";
    os << "weak              " << (report.weak() ? "yes" : "no") << "\n";
    if (!args.csv_path.empty()) {
        CsvSink csv(args.csv_path, key_seed_note(&key, nullptr), "field,value");
        csv.out() << "x0_invalid," << report.x0_invalid << "\n"
                  << "subkey_period," << report.period << "\n"
                  << "k10_zero," << report.k10_zero << "\n"
                  << "k10_one," << report.k10_one << "\n"
                  << "k10_recommended," << report.k10_recommended << "\n"
                  << "visual_leak_red," << report.visual.red << "\n"
                  << "visual_leak_green," << report.visual.green << "\n"
                  << "visual_leak_blue," << report.visual.blue << "\n"
                  << "visual_leak_whole," << report.visual.whole_image << "\n"
                  << "nibble_swap_orbit," << report.nibble_swap_orbit.size() << "\n"
                  << "msb_flip_orbit," << report.msb_flip_orbit.size() << "\n"
                  << "log2_keyspace," << report.log2_keyspace << "\n";
    }
    return 0;
}

int cmd_attack_k10_probe(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const RgbImage probe = craft_probe_image(args.width, args.height);
    const RgbImage cipher = process_image_parallel(probe, key, Direction::Encrypt);
    const auto pairs = find_identical_cipher_blocks(cipher);
    const K10Inference inf = infer_k10_candidates(pairs);
    std::cout << "identical_pairs   " << pairs.size() << "\n";
    std::cout << "index_gcd         " << inf.index_gcd << "\n";
    std::cout << "candidates        ";
    for (const auto k : inf.candidates) {
        std::cout << static_cast<int>(k) << " ";
    }
    std::cout << "\n";
    if (inf.advisory) {
        std::cout << "advisory          thin evidence; candidates may include chance collisions\n";
    }
    if (!args.csv_path.empty()) {
        CsvSink csv(args.csv_path, key_seed_note(&key, nullptr), "kind,first,second");
        for (const auto& p : pairs) {
            csv.out() << "pair," << p.first << "," << p.second << "\n";
        }
        for (const auto k : inf.candidates) {
            csv.out() << "candidate," << static_cast<int>(k) << ",\n";
        }
    }
    return 0;
}

int cmd_attack_first_block(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const RgbImage plain = noise_image(args.width, args.height, args.seed);
    const RgbImage cipher = process_image_parallel(plain, key, Direction::Encrypt);
    const std::array<std::uint8_t, 1> candidates{key.k(10)};
    const std::array<std::uint8_t, 6> params{key.k(4), key.k(5), key.k(6),
                                             key.k(7), key.k(8), key.k(9)};
    const auto hits = first_block_search(get_block(plain, 0), get_block(cipher, 0), candidates,
                                         args.grid_bits, params);
    const double true_y0 = block_contexts(key, 1)[0].y0;
    std::cout << "hits              " << hits.size() << "\n";
    std::cout << "true_y0           " << true_y0 << "\n";
    CsvSink csv(args.csv_path, key_seed_note(&key, &args.seed), "y0,k10");
    csv.out().precision(17);
    for (const auto& h : hits) {
        csv.out() << h.y0 << "," << static_cast<int>(h.k10) << "\n";
    }
    return 0;
}

int cmd_attack_cpa(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const RgbImage base = noise_image(args.width, args.height, args.seed);
    std::vector<std::uint8_t> offsets;
    for (int l = 0; l < args.images; ++l) {
        offsets.push_back(static_cast<std::uint8_t>(l));
    }
    std::vector<RgbImage> ciphers;
    ciphers.reserve(offsets.size());
    for (const auto l : offsets) {
        ciphers.push_back(process_image_parallel(xor_offset_image(base, l), key,
                                                 Direction::Encrypt));
    }
    const CpaResult result = cpa_recover(base, offsets, ciphers);
    std::cout << "flagged_positions r=" << result.detection.flagged_count[0]
              << " g=" << result.detection.flagged_count[1]
              << " b=" << result.detection.flagged_count[2] << "\n";
    std::cout << "fragments         " << result.fragments.size() << "\n";
    CsvSink csv(args.csv_path, key_seed_note(&key, &args.seed),
                "k10_mod128,k4,k5,k6,k7,k8,k9");
    for (const auto& f : result.fragments) {
        csv.out() << static_cast<int>(f.k10_mod128);
        for (const auto s : f.subkeys_mod128) {
            csv.out() << "," << static_cast<int>(s);
        }
        csv.out() << "\n";
    }
    return 0;
}

int cmd_attack_kpa(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const RgbImage known_plain = noise_image(args.width, args.height, args.seed);
    const RgbImage target_plain = gradient_image(args.width, args.height);
    const RgbImage known_cipher = process_image_parallel(known_plain, key, Direction::Encrypt);
    const RgbImage target_cipher = process_image_parallel(target_plain, key, Direction::Encrypt);
    const RgbImage recovered = kpa_mask_attack(known_plain, known_cipher, target_cipher);
    std::size_t exact = 0;
    for (std::size_t i = 0; i < recovered.data.size(); ++i) {
        exact += recovered.data[i] == target_plain.data[i] ? 1 : 0;
    }
    const double fraction = static_cast<double>(exact) / static_cast<double>(recovered.data.size());
    std::cout << "recovered_exactly " << fraction << "\n";
    if (!args.out_path.empty()) {
        save_ppm(recovered, std::filesystem::path(args.out_path));
    }
    CsvSink csv(args.csv_path, key_seed_note(&key, &args.seed), "recovered_fraction");
    csv.out() << fraction << "\n";
    return 0;
}

int cmd_stats_len_dist(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    std::map<std::size_t, std::size_t> histogram;
    visit_composites(key, static_cast<std::size_t>(args.trials),
                     [&](int, std::size_t, int, const CompositeFn& fn) { ++histogram[fn.len()]; });
    CsvSink csv(args.csv_path, key_seed_note(&key, nullptr), "len,count");
    for (const auto& [len, count] : histogram) {
        csv.out() << len << "," << count << "\n";
    }
    return 0;
}

int cmd_stats_ps_curve(const CommonArgs& args) {
    CsvSink csv(args.csv_path, "closed form, no inputs", "m,n,p");
    csv.out().precision(17);
    for (int m = 0; m <= 24; ++m) {
        for (int n = 0; n <= 24; ++n) {
            csv.out() << m << "," << n << "," << probability_y0_zero(m, n) << "\n";
        }
    }
    return 0;
}

int cmd_stats_pb_curve(const CommonArgs& args) {
    CsvSink csv(args.csv_path, "closed form, no inputs", "m,p");
    csv.out().precision(17);
    for (int m = 0; m <= 24; ++m) {
        csv.out() << m << "," << p_b_collision(m) << "\n";
    }
    return 0;
}

int cmd_stats_rn_curve(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const RgbImage base = noise_image(args.width, args.height, args.seed);
    std::vector<RgbImage> ciphers;
    ciphers.reserve(128);
    for (int l = 0; l < 128; ++l) {
        ciphers.push_back(process_image_parallel(
            xor_offset_image(base, static_cast<std::uint8_t>(l)), key, Direction::Encrypt));
    }
    CsvSink csv(args.csv_path, key_seed_note(&key, &args.seed), "n,detected,r");
    for (const auto& point : rn_curve(ciphers)) {
        csv.out() << point.n << "," << point.detected << "," << point.r << "\n";
    }
    return 0;
}

int cmd_stats_xor_eq_count(const CommonArgs& args) {
    const SecretKey key = SecretKey::from_hex(args.key_hex);
    const auto pixels = static_cast<std::size_t>(args.width) * static_cast<std::size_t>(args.height);
    if (pixels % kBlockPixels != 0) {
        throw BadDimensionsError("pixel count must be a multiple of 16");
    }
    std::array<std::size_t, 3> counts{};
    visit_composites(key, pixels / kBlockPixels,
                     [&](int channel, std::size_t, int, const CompositeFn& fn) {
                         std::array<std::uint8_t, 256> table;
                         for (int x = 0; x < 256; ++x) {
                             table[static_cast<std::size_t>(x)] =
                                 fn.apply(static_cast<std::uint8_t>(x));
                         }
                         if (xor_equivalent_gamma(table, ProbeBudget::Full255)) {
                             ++counts[static_cast<std::size_t>(channel)];
                         }
                     });
    CsvSink csv(args.csv_path, key_seed_note(&key, nullptr), "channel,count");
    const char* names[] = {"r", "g", "b"};
    for (int c = 0; c < 3; ++c) {
        csv.out() << names[c] << "," << counts[static_cast<std::size_t>(c)] << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaos image cipher workbench: cipher, key audit, attacks"};
    app.require_subcommand(1);
    CommonArgs args;

    auto add_key = [&](CLI::App* cmd) {
        cmd->add_option("--key", args.key_hex, "20 hex digit key")->required();
    };
    auto add_size = [&](CLI::App* cmd) {
        cmd->add_option("--width", args.width, "generated image width");
        cmd->add_option("--height", args.height, "generated image height");
    };
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", args.seed, "seed for generated images");
    };
    auto add_csv = [&](CLI::App* cmd) {
        cmd->add_option("--csv", args.csv_path, "write the result table to this file");
    };

    auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a PPM image");
    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a PPM image");
    for (auto* cmd : {encrypt_cmd, decrypt_cmd}) {
        add_key(cmd);
        cmd->add_option("--in", args.in_path, "input PPM")->required();
        cmd->add_option("--out", args.out_path, "output PPM")->required();
    }

    auto* audit_cmd = app.add_subcommand("audit", "report key defects and equivalents");
    add_key(audit_cmd);
    add_csv(audit_cmd);

    auto* attack = app.add_subcommand("attack", "run an attack experiment");
    attack->require_subcommand(1);
    auto* probe_cmd = attack->add_subcommand("k10-probe", "recover K10 candidates from a probe");
    add_key(probe_cmd);
    add_size(probe_cmd);
    add_csv(probe_cmd);

    auto* first_block_cmd =
        attack->add_subcommand("first-block", "sweep the first block's seed grid");
    add_key(first_block_cmd);
    add_size(first_block_cmd);
    add_seed(first_block_cmd);
    add_csv(first_block_cmd);
    first_block_cmd->add_option("--k10-grid-bits", args.grid_bits, "y0 grid resolution")
        ->check(CLI::Range(1, 24));

    auto* cpa_cmd = attack->add_subcommand("cpa", "chosen-plaintext key fragment recovery");
    add_key(cpa_cmd);
    add_size(cpa_cmd);
    add_seed(cpa_cmd);
    add_csv(cpa_cmd);
    cpa_cmd->add_option("--images", args.images, "number of chosen images")
        ->check(CLI::Range(2, 256));

    auto* kpa_cmd = attack->add_subcommand("kpa", "known-plaintext mask recovery");
    add_key(kpa_cmd);
    add_size(kpa_cmd);
    add_seed(kpa_cmd);
    add_csv(kpa_cmd);
    kpa_cmd->add_option("--out", args.out_path, "write the recovered image here");

    auto* stats = app.add_subcommand("stats", "emit a CSV experiment table");
    stats->require_subcommand(1);
    auto* len_cmd = stats->add_subcommand("len-dist", "composite length histogram");
    add_key(len_cmd);
    add_csv(len_cmd);
    len_cmd->add_option("--trials", args.trials, "number of blocks to walk")
        ->check(CLI::PositiveNumber);
    auto* ps_cmd = stats->add_subcommand("ps-curve", "block seed zero probabilities");
    add_csv(ps_cmd);
    auto* pb_cmd = stats->add_subcommand("pb-curve", "block seed collision probabilities");
    add_csv(pb_cmd);
    auto* rn_cmd = stats->add_subcommand("rn-curve", "detection ratio vs offset count");
    add_key(rn_cmd);
    add_size(rn_cmd);
    add_seed(rn_cmd);
    add_csv(rn_cmd);
    auto* xec_cmd = stats->add_subcommand("xor-eq-count", "per channel XOR-equivalent positions");
    add_key(xec_cmd);
    add_size(xec_cmd);
    add_csv(xec_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (encrypt_cmd->parsed()) {
            return cmd_crypt(args, Direction::Encrypt);
        }
        if (decrypt_cmd->parsed()) {
            return cmd_crypt(args, Direction::Decrypt);
        }
        if (audit_cmd->parsed()) {
            return cmd_audit(args);
        }
        if (attack->parsed()) {
            if (probe_cmd->parsed()) {
                return cmd_attack_k10_probe(args);
            }
            if (first_block_cmd->parsed()) {
                return cmd_attack_first_block(args);
            }
            if (cpa_cmd->parsed()) {
                return cmd_attack_cpa(args);
            }
            return cmd_attack_kpa(args);
        }
        if (len_cmd->parsed()) {
            return cmd_stats_len_dist(args);
        }
        if (ps_cmd->parsed()) {
            return cmd_stats_ps_curve(args);
        }
        if (pb_cmd->parsed()) {
            return cmd_stats_pb_curve(args);
        }
        if (rn_cmd->parsed()) {
            return cmd_stats_rn_curve(args);
        }
        return cmd_stats_xor_eq_count(args);
    } catch (const BadKeyError& e) {
        std::cerr << "bad key: " << e.what() << "\n";
        return 2;
    } catch (const InvalidKeyError& e) {
        std::cerr << "invalid key: " << e.what() << "\n";
        return 4;
    } catch (const MalformedPpmError& e) {
        std::cerr << "bad image: " << e.what() << "\n";
        return 3;
    } catch (const BadDimensionsError& e) {
        std::cerr << "bad image: " << e.what() << "\n";
        return 3;
    } catch (const DimensionMismatchError& e) {
        std::cerr << "bad image: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
