// Regenerates the bundled HTTP profile: make_http_profile <profiles-dir>
#include "idiomval/http_validate.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: make_http_profile DIR\n";
        return 2;
    }
    try {
        idiomval::write_http_profile(argv[1]);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
