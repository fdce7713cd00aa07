blob = rb'\x00 # mixed'
