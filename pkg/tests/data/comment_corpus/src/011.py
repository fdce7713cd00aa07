total = 1 + \
    2  # sum
