#include <iostream>

#include "commands.hpp"
#include "grasslearn/types.hpp"

// Exit codes: 0 success, 1 usage, 2 data or dimension errors, 3 numerical
// failures (including a failing self-test).

int main(int argc, char** argv) {
  CLI::App app{"Grassmann subspace learning toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "grasslearn 0.1.0");

  grasslearn::cli::register_dist(app);
  grasslearn::cli::register_cluster(app);
  grasslearn::cli::register_complete(app);
  grasslearn::cli::register_adapt(app);
  grasslearn::cli::register_gda(app);
  grasslearn::cli::register_grnet(app);
  grasslearn::cli::register_gen(app);
  grasslearn::cli::register_verify(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const grasslearn::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const grasslearn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
