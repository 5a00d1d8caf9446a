#include "sigmabias/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "sigmabias/errors.hpp"

namespace sigmabias {

namespace {

std::uint64_t parse_u64(const std::string& token, const char* what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw CheckpointError(std::string("checkpoint: bad ") + what + " '" + token + "'");
  }
}

BigRational parse_fraction(const std::string& token, const char* what) {
  try {
    return parse_rational(token);
  } catch (const std::exception&) {
    throw CheckpointError(std::string("checkpoint: bad ") + what + " '" + token + "'");
  }
}

}  // namespace

std::string checkpoint_header_line(const CheckpointKey& key) {
  std::ostringstream out;
  out << "sigmabias-checkpoint/1 version=" << key.version << " modulus=" << key.modulus
      << " smooth_y=" << key.smooth_y << " cap=" << key.cap << " exponent=" << key.exponent
      << " zeta_terms=" << key.zeta_terms << " mode=" << key.mode;
  return out.str();
}

std::string checkpoint_data_line(const BPartial& line) {
  std::ostringstream out;
  out << "b " << line.b << ' ' << line.pairs << ' ' << line.valid << ' '
      << rational_string(line.u) << ' ' << rational_string(line.v);
  return out.str();
}

std::string serialize_checkpoint(const EnumCheckpoint& state) {
  std::string out = checkpoint_header_line(state.key);
  out += '\n';
  for (const BPartial& line : state.completed) {
    out += checkpoint_data_line(line);
    out += '\n';
  }
  return out;
}

EnumCheckpoint parse_checkpoint(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw CheckpointError("checkpoint: empty file");
  std::istringstream hs(header);
  std::string magic;
  hs >> magic;
  if (magic != "sigmabias-checkpoint/1")
    throw CheckpointError("checkpoint: unrecognized header '" + magic + "'");
  EnumCheckpoint state;
  std::string field;
  while (hs >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw CheckpointError("checkpoint: bad header field '" + field + "'");
    const std::string name = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (name == "version") state.key.version = value;
    else if (name == "modulus") state.key.modulus = parse_u64(value, "modulus");
    else if (name == "smooth_y") state.key.smooth_y = parse_u64(value, "smooth_y");
    else if (name == "cap") state.key.cap = parse_u64(value, "cap");
    else if (name == "exponent") state.key.exponent = static_cast<unsigned>(parse_u64(value, "exponent"));
    else if (name == "zeta_terms") state.key.zeta_terms = parse_u64(value, "zeta_terms");
    else if (name == "mode") state.key.mode = value;
    else throw CheckpointError("checkpoint: unknown header field '" + name + "'");
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag, bt, pt, vt, ut, wt;
    ls >> tag >> bt >> pt >> vt >> ut >> wt;
    if (tag != "b" || wt.empty())
      throw CheckpointError("checkpoint: bad data line '" + line + "'");
    BPartial p;
    p.b = parse_u64(bt, "b");
    p.pairs = parse_u64(pt, "pair count");
    p.valid = parse_u64(vt, "valid count");
    p.u = parse_fraction(ut, "u aggregate");
    p.v = parse_fraction(wt, "v aggregate");
    state.completed.push_back(std::move(p));
  }
  return state;
}

EnumCheckpoint load_checkpoint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_checkpoint(buffer.str());
}

}  // namespace sigmabias
