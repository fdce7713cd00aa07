blob = rb'\x00 # mixed'  # strip
