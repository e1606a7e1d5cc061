"""
Neron component series modules
"""
