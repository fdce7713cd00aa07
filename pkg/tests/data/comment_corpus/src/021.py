s = '#'
