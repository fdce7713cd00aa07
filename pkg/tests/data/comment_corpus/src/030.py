s = '''
# keep
'''
