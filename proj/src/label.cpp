#include "scripta/label.hpp"

#include "scripta/error.hpp"

namespace scripta {

Label::Label(int value) : value_(value) {
    if (value < 1 || value > static_cast<int>(kLabelCount))
        throw Error(Errc::InvalidArgument, "label must lie in 1..26, got " + std::to_string(value));
}

Label Label::from_letter(char letter) {
    if (letter >= 'a' && letter <= 'z') letter = static_cast<char>(letter - 'a' + 'A');
    if (letter < 'A' || letter > 'Z')
        throw Error(Errc::InvalidArgument, std::string("not a letter A-Z: '") + letter + "'");
    return Label(letter - 'A' + 1);
}

}  // namespace scripta
