try:
    v = int('3')
except ValueError:
    v = 0
