#include <string>
#include <vector>

#include "fracboost/cli.hpp"

int main(int argc, char** argv) {
    return fracboost::dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
