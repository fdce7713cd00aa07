def a():
    return 1

# section
# divider
# lines

def b():
    return 2
