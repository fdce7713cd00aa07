s = 'trailing #'
