a, b = 1, 2
ok = 0 < a < b
