#include "cdna/cli.hpp"

#include <openssl/rand.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "cdna/errors.hpp"
#include "cdna/keyschedule.hpp"
#include "cdna/metrics.hpp"
#include "cdna/pgm.hpp"
#include "cdna/pipeline.hpp"
#include "cdna/sbox.hpp"
#include "cdna/sidecar.hpp"

namespace cdna::cli {

namespace {

struct Options {
    std::string in;
    std::string out;
    std::string key;
    bool key_from_image = false;
    std::string sidecar;
    std::string plain;
    std::string cipher;
    std::string csv;
    std::string from_image;
    bool random = false;
};

MasterKey random_key()
{
    MasterKey key;
    if (RAND_bytes(key.digest.data(), static_cast<int>(key.digest.size())) != 1) {
        throw Error("system random generator failed");
    }
    key.origin = KeyOrigin::UserSupplied;
    return key;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw MalformedFile("cannot open " + path + " for writing");
    f << text;
    if (!f) throw MalformedFile("failed writing " + path);
}

std::string sbox_dump()
{
    std::ostringstream s;
    const auto& boxes = sbox::standard_sboxes();
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        s << "# sbox " << k << '\n';
        const auto& t = boxes[k].table();
        for (std::size_t i = 0; i < t.size(); ++i) {
            s << std::hex << std::setw(2) << std::setfill('0') << int{t[i]} << (i % 16 == 15 ? '\n' : ' ');
        }
    }
    return s.str();
}

int cmd_encrypt(const Options& o, std::ostream& err)
{
    const auto plain = pgm::read_pgm(o.in);
    if (!o.sidecar.empty()) read_sidecar(o.sidecar).check_matches(plain);
    const MasterKey key = o.key_from_image ? keyschedule::derive_key(plain) : keyschedule::read_key_file(o.key);
    write_cipher_file(o.out, pipeline::encrypt(plain, key));
    if (o.key_from_image) {
        err << "note: key derived from the plaintext; recreate it with 'keygen --from-image " << o.in << "'\n";
    }
    return kOk;
}

int cmd_decrypt(const Options& o)
{
    const auto env = read_cipher_file(o.in);
    const auto key = keyschedule::read_key_file(o.key);
    pgm::write_pgm(pipeline::decrypt(env, key), o.out);
    return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out)
{
    const auto plain = pgm::read_pgm(o.plain);
    const auto env = read_cipher_file(o.cipher);
    const MasterKey key = o.key.empty() ? keyschedule::derive_key(plain) : keyschedule::read_key_file(o.key);
    const auto report = metrics::analyze(plain, env, key);
    write_text(o.out, metrics::to_key_value_text(report), out);
    if (!o.csv.empty()) metrics::write_csv(o.csv, plain, env.body, report);
    return kOk;
}

int cmd_keygen(const Options& o)
{
    const MasterKey key = o.random ? random_key() : keyschedule::derive_key(pgm::read_pgm(o.from_image));
    keyschedule::write_key_file(o.out, key);
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Chaos + DNA grayscale image cipher", "cdna"};
    app.require_subcommand(1);
    Options o;

    auto* enc = app.add_subcommand("encrypt", "Encrypt a P5 greymap into a .cdna envelope");
    enc->add_option("--in", o.in, "Plaintext PGM")->required();
    auto* enc_key = enc->add_option("--key", o.key, "Key file");
    auto* enc_img = enc->add_flag("--key-from-image", o.key_from_image, "Derive the key from the plaintext");
    enc_key->excludes(enc_img);
    enc->add_option("--out", o.out, "Cipher file")->required();
    enc->add_option("--sidecar", o.sidecar, "Latent sidecar to check against the input");

    auto* dec = app.add_subcommand("decrypt", "Decrypt a .cdna envelope");
    dec->add_option("--in", o.in, "Cipher file")->required();
    dec->add_option("--key", o.key, "Key file")->required();
    dec->add_option("--out", o.out, "Recovered PGM")->required();

    auto* ana = app.add_subcommand("analyze", "Security metrics for a plaintext/ciphertext pair");
    ana->add_option("--plain", o.plain, "Plaintext PGM")->required();
    ana->add_option("--cipher", o.cipher, "Cipher file")->required();
    ana->add_option("--out", o.out, "Report file ('-' for stdout)")->required();
    ana->add_option("--csv", o.csv, "Directory for CSV report, histograms and scatter pairs");
    ana->add_option("--key", o.key, "Key file (default: derived from the plaintext)");

    auto* kg = app.add_subcommand("keygen", "Write a key file");
    auto* kg_img = kg->add_option("--from-image", o.from_image, "Hash this PGM into a key");
    auto* kg_rnd = kg->add_flag("--random", o.random, "Draw a key from the system CSPRNG");
    kg_img->excludes(kg_rnd);
    kg->add_option("--out", o.out, "Key file")->required();

    auto* sb = app.add_subcommand("sbox", "S-box utilities");
    sb->require_subcommand(1);
    auto* dump = sb->add_subcommand("dump", "Print the three S-boxes as hex");
    dump->add_option("--out", o.out, "Output file (default stdout)");

    std::vector<const char*> argv{"cdna"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (*enc && o.key.empty() && !o.key_from_image) {
            throw CLI::ValidationError("encrypt", "one of --key or --key-from-image is required");
        }
        if (*kg && o.from_image.empty() && !o.random) {
            throw CLI::ValidationError("keygen", "one of --from-image or --random is required");
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kValidationError;
    }

    try {
        if (*enc) return cmd_encrypt(o, err);
        if (*dec) return cmd_decrypt(o);
        if (*ana) return cmd_analyze(o, out);
        if (*kg) return cmd_keygen(o);
        if (*dump) {
            write_text(o.out, sbox_dump(), out);
            return kOk;
        }
    } catch (const ChecksumMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kCryptoMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }
    return kValidationError;
}

}  // namespace cdna::cli
