#pragma once

#include "rabinp/attacks.hpp"
#include "rabinp/codec.hpp"
#include "rabinp/errors.hpp"

#include <cstdio>
#include <memory>
#include <string>

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

namespace rabinp::attacks {

/// Client side of the subprocess oracle protocol: one lowercase-hex
/// ciphertext per line on the child's stdin, one decimal plaintext per
/// line on its stdout. The child is spawned through /bin/sh and kept
/// alive for the whole attack. Callers should ignore SIGPIPE.
class SubprocessOracle {
 public:
  explicit SubprocessOracle(const std::string& command) {
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0)
      throw OracleError("oracle: pipe() failed");
    pid_ = ::fork();
    if (pid_ < 0) throw OracleError("oracle: fork() failed");
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_ = ::fdopen(to_child[1], "w");
    out_ = ::fdopen(from_child[0], "r");
    if (!in_ || !out_) throw OracleError("oracle: fdopen() failed");
  }

  SubprocessOracle(const SubprocessOracle&) = delete;
  SubprocessOracle& operator=(const SubprocessOracle&) = delete;

  ~SubprocessOracle() {
    if (in_) ::fclose(in_);
    if (out_) ::fclose(out_);
    if (pid_ > 0) {
      int status = 0;
      ::waitpid(pid_, &status, 0);
    }
  }

  bigint operator()(const Ciphertext& ct) {
    std::string line = codec::to_hex(ct.c);
    line.push_back('\n');
    if (std::fwrite(line.data(), 1, line.size(), in_) != line.size() ||
        std::fflush(in_) != 0)
      throw OracleError("oracle: child stopped reading");
    std::string reply;
    for (;;) {
      int ch = std::fgetc(out_);
      if (ch == EOF) throw OracleError("oracle: child closed its output");
      if (ch == '\n') break;
      reply.push_back(static_cast<char>(ch));
    }
    if (reply.empty() || reply == "ERR" ||
        reply.find_first_not_of("0123456789") != std::string::npos)
      throw OracleError("oracle: unusable reply '" + reply + "'");
    return bigint(reply);
  }

  /// Adapter so the attack loop can consume this like any other oracle.
  static DecryptionOracle as_oracle(std::shared_ptr<SubprocessOracle> self) {
    return [self](const Ciphertext& ct) { return (*self)(ct); };
  }

 private:
  pid_t pid_ = -1;
  std::FILE* in_ = nullptr;
  std::FILE* out_ = nullptr;
};

}  // namespace rabinp::attacks
